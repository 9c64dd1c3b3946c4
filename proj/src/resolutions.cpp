#include "chowdiag/resolutions.hpp"

namespace chowdiag {

bool operator==(const ProjectiveTag& a, const ProjectiveTag& b) {
    return a.kind == b.kind && a.value == b.value;
}

// -- hom-dimension providers ------------------------------------------------

HomDimProvider HomDimProvider::acyclic_path_count(Quiver q) {
    if (!q.acyclic())
        throw CyclicQuiver("path-count hom dimensions need an acyclic quiver");
    HomDimProvider out(Mode::PathCount, ProjectiveTag::Kind::PathIdempotent);
    out.quiver_ = std::move(q);
    return out;
}

HomDimProvider HomDimProvider::graded_binary() {
    return HomDimProvider(Mode::Graded, ProjectiveTag::Kind::GradedTwist);
}

HomDimProvider HomDimProvider::symmetric_triple_quiver() {
    return HomDimProvider(Mode::Triple,
                          ProjectiveTag::Kind::RelationAlgebraIdempotent);
}

HomDimProvider HomDimProvider::explicit_table(
    ProjectiveTag::Kind kind, std::vector<std::vector<long long>> dims) {
    for (const auto& row : dims) {
        if (row.size() != dims.size())
            throw InvalidArgument("hom-dimension table must be square");
        for (long long v : row)
            if (v < 0) throw InvalidArgument("hom dimensions must be >= 0");
    }
    HomDimProvider out(Mode::Table, kind);
    out.table_ = std::move(dims);
    return out;
}

long long HomDimProvider::dim_hom(const ProjectiveTag& from,
                                  const ProjectiveTag& to) const {
    if (from.kind != kind_ || to.kind != kind_)
        throw ProviderMismatch("projective tag kind does not fit this provider");
    switch (mode_) {
        case Mode::PathCount: {
            auto n = static_cast<long long>(quiver_->vertices().size());
            if (from.value < 0 || from.value >= n || to.value < 0 || to.value >= n)
                throw ProviderMismatch("tag vertex outside the provider's quiver");
            // Hom(Se_v, Se_w) is spanned by the paths from w to v
            return quiver_->path_count(static_cast<std::size_t>(to.value),
                                       static_cast<std::size_t>(from.value));
        }
        case Mode::Graded:
            // Hom(S(-n1), S(-n2))_0 = degree-(n1-n2) forms in two variables
            return std::max(0LL, from.value - to.value + 1);
        case Mode::Triple: {
            if (from.value < 0 || from.value > 2 || to.value < 0 || to.value > 2)
                throw ProviderMismatch("triple-quiver tags live on vertices 0..2");
            // paths of length l compose like degree-l monomials in x, y, z
            long long l = to.value - from.value;
            return l < 0 ? 0 : (l + 2) * (l + 1) / 2;
        }
        case Mode::Table: {
            auto n = static_cast<long long>(table_.size());
            if (from.value < 0 || from.value >= n || to.value < 0 || to.value >= n)
                throw ProviderMismatch("tag outside the provider's table");
            return table_[static_cast<std::size_t>(from.value)]
                         [static_cast<std::size_t>(to.value)];
        }
    }
    throw Error("unreachable");
}

// -- resolutions ------------------------------------------------------------

namespace {

void validate_entries(const UniversalResolution& res) {
    RingPtr ring;
    for (const auto& row : res.rows)
        for (const auto& entry : row) {
            if (entry.bundle.rank() < 0)
                throw NegativeRank("resolution entries must be genuine bundles");
            if (!ring)
                ring = entry.bundle.ring();
            else if (ring != entry.bundle.ring())
                throw RingMismatch("resolution entries must share one ring");
        }
}

}  // namespace

RingPtr resolution_ring(const UniversalResolution& res) {
    for (const auto& row : res.rows)
        for (const auto& entry : row) return entry.bundle.ring();
    throw InvalidArgument("empty resolution has no base ring");
}

UniversalResolution quiver_resolution(const Quiver& q,
                                      const std::vector<BundleClass>& u) {
    if (!q.acyclic())
        throw CyclicQuiver("universal resolutions need an acyclic quiver");
    if (u.size() != q.vertices().size())
        throw InvalidArgument("need one bundle class per vertex");
    UniversalResolution res;
    res.rows.resize(2);
    for (std::size_t i = 0; i < u.size(); i++)
        res.rows[0].push_back({ProjectiveTag::path_idempotent(i), u[i]});
    for (const auto& a : q.arrows())
        res.rows[1].push_back({ProjectiveTag::path_idempotent(a.head), u[a.tail]});
    validate_entries(res);
    return res;
}

UniversalResolution gt_resolution(const std::vector<long long>& t,
                                  const std::vector<BundleClass>& a) {
    if (t.empty()) throw InvalidArgument("need a nonempty rank sequence");
    if (a.size() != t.size())
        throw InvalidArgument("need one bundle class per rank entry");
    for (std::size_t n = 0; n < t.size(); n++) {
        if (t[n] < 0) throw InvalidArgument("ranks must be >= 0");
        if (a[n].rank() != t[n])
            throw RankMismatch("bundle at position " + std::to_string(n) +
                               " has rank " + std::to_string(a[n].rank()) +
                               ", expected " + std::to_string(t[n]));
    }
    UniversalResolution res;
    res.rows.resize(3);
    for (std::size_t n = 0; n < t.size(); n++) {
        if (t[n] == 0) continue;
        auto ln = static_cast<long long>(n);
        res.rows[0].push_back({ProjectiveTag::graded_twist(ln), a[n]});
        res.rows[1].push_back({ProjectiveTag::graded_twist(ln + 1), a[n]});
        res.rows[1].push_back({ProjectiveTag::graded_twist(ln + 1), a[n]});
        res.rows[2].push_back({ProjectiveTag::graded_twist(ln + 2), a[n]});
    }
    if (res.rows[0].empty()) throw InvalidArgument("all ranks are zero");
    validate_entries(res);
    return res;
}

// -- the plane configuration ------------------------------------------------

P2Config::P2Config(long long r, long long c1, long long chi, long long m)
    : r_(r), c1_(c1), chi_(chi), m_(m) {
    if (!(-r < c1 && c1 <= 0))
        throw InvalidConfig("need -r < c1 <= 0, got r = " + std::to_string(r) +
                            ", c1 = " + std::to_string(c1));
    if (!(chi <= 0))
        throw InvalidConfig("need chi <= 0, got chi = " + std::to_string(chi));
    if (!(chi <= r + 2 * c1))
        throw InvalidConfig("need chi <= r + 2 c1, got chi = " +
                            std::to_string(chi) + " > " +
                            std::to_string(r + 2 * c1));
    for (long long v : alpha())
        if (v < 0)
            throw InvalidConfig("dimension vector has a negative entry " +
                                std::to_string(v));
}

std::array<long long, 3> P2Config::alpha() const {
    return {n() + c1_, n(), n() - (r_ + c1_)};
}

std::array<long long, 3> P2Config::theta() const {
    return {-(r_ + c1_) * m_ + n(), (r_ + 2 * c1_) * m_ - 2 * n() + r_,
            -c1_ * m_ + n()};
}

Quiver p2_quiver() {
    return Quiver({"2", "1", "0"}, {{"x1", "2", "1"},
                                    {"y1", "2", "1"},
                                    {"z1", "2", "1"},
                                    {"x2", "1", "0"},
                                    {"y2", "1", "0"},
                                    {"z2", "1", "0"}});
}

long long p2_moduli_dimension(const P2Config& cfg) {
    auto al = cfg.alpha();
    long long quad = al[0] * al[0] + al[1] * al[1] + al[2] * al[2]  // vertices
                     - 3 * al[0] * al[1] - 3 * al[1] * al[2]        // arrows
                     + 3 * al[0] * al[2];                           // relations
    return 1 - quad;
}

UniversalResolution p2_resolution(const P2Config& cfg,
                                  const std::vector<BundleClass>& u) {
    if (u.size() != 3)
        throw InvalidArgument("need bundle classes for the vertices 2, 1, 0");
    auto al = cfg.alpha();
    for (int i = 0; i < 3; i++)
        if (u[i].rank() != al[i])
            throw RankMismatch("bundle rank " + std::to_string(u[i].rank()) +
                               " does not match alpha entry " +
                               std::to_string(al[i]));
    UniversalResolution res;
    res.rows.resize(3);
    for (long long v = 0; v < 3; v++)
        res.rows[0].push_back(
            {ProjectiveTag::relation_idempotent(2 - v), u[static_cast<std::size_t>(v)]});
    for (int rep = 0; rep < 3; rep++)
        res.rows[1].push_back({ProjectiveTag::relation_idempotent(1), u[0]});
    for (int rep = 0; rep < 3; rep++)
        res.rows[1].push_back({ProjectiveTag::relation_idempotent(0), u[1]});
    for (int rep = 0; rep < 3; rep++)
        res.rows[2].push_back({ProjectiveTag::relation_idempotent(0), u[0]});
    validate_entries(res);
    return res;
}

// -- the two-sided complex ---------------------------------------------------

namespace {

BundleClass pull1(const ProductRing& sq, const BundleClass& e) {
    return BundleClass(e.rank(), sq.p1(e.total_chern()));
}

BundleClass pull2(const ProductRing& sq, const BundleClass& e) {
    return BundleClass(e.rank(), sq.p2(e.total_chern()));
}

}  // namespace

std::vector<LComplexEntry> build_L_complex(const UniversalResolution& res,
                                           const HomDimProvider& provider,
                                           const ProductRing& square) {
    if (res.rows.empty()) return {};
    validate_entries(res);
    if (square.left != square.right)
        throw InvalidArgument("the complex lives on a square product");
    if (resolution_ring(res) != square.left)
        throw RingMismatch("resolution ring differs from the square's factor");

    int r = static_cast<int>(res.rows.size()) - 1;
    std::vector<LComplexEntry> out;
    for (int p = -r; p <= r; p++) {
        BundleClass acc = trivial_bundle(square.ring, 0);
        for (int i = std::max(0, -p); i <= std::min(r, r - p); i++) {
            const auto& src = res.rows[static_cast<std::size_t>(i)];
            const auto& dst = res.rows[static_cast<std::size_t>(i + p)];
            for (const auto& e : src)
                for (const auto& f : dst) {
                    long long d = provider.dim_hom(e.tag, f.tag);
                    if (d == 0) continue;
                    auto term =
                        hom_bundle(pull1(square, e.bundle), pull2(square, f.bundle));
                    acc = whitney_sum(acc, direct_sum(term, d));
                }
        }
        out.push_back({p, std::move(acc)});
    }
    return out;
}

long long virtual_rank(const UniversalResolution& res,
                       const HomDimProvider& provider) {
    validate_entries(res);
    long long total = 0;
    int r = static_cast<int>(res.rows.size()) - 1;
    for (int p = -r; p <= r; p++) {
        long long rank = 0;
        for (int i = std::max(0, -p); i <= std::min(r, r - p); i++)
            for (const auto& e : res.rows[static_cast<std::size_t>(i)])
                for (const auto& f : res.rows[static_cast<std::size_t>(i + p)])
                    rank += provider.dim_hom(e.tag, f.tag) * e.bundle.rank() *
                            f.bundle.rank();
        total += p % 2 ? rank : -rank;  // sign (-1)^{p+1}
    }
    return total;
}

RingElement diagonal_class(const UniversalResolution& res,
                           const HomDimProvider& provider,
                           const ProductRing& square) {
    BundleClass acc = trivial_bundle(square.ring, 0);
    for (const auto& [p, cls] : build_L_complex(res, provider, square))
        acc = p % 2 ? whitney_sum(acc, cls) : virtual_difference(acc, cls);
    return top_class(acc, square.left->top_degree());
}

UniversalResolution twist_resolution(const UniversalResolution& res,
                                     const RingElement& c1) {
    UniversalResolution out;
    out.rows.reserve(res.rows.size());
    for (const auto& row : res.rows) {
        std::vector<ResolutionEntry> twisted;
        twisted.reserve(row.size());
        for (const auto& entry : row)
            twisted.push_back({entry.tag, tensor_line(entry.bundle, c1)});
        out.rows.push_back(std::move(twisted));
    }
    return out;
}

// -- shipped pipelines --------------------------------------------------------

namespace {

Quiver kronecker_quiver(int arrows) {
    std::vector<Quiver::ArrowSpec> specs;
    for (int i = 1; i <= arrows; i++)
        specs.push_back({"a" + std::to_string(i), "0", "1"});
    return Quiver({"0", "1"}, specs);
}

}  // namespace

DiagonalRun diagonal_setup_pn(int n) {
    if (n < 1) throw InvalidArgument("need n >= 1");
    auto base = projective_space(n);
    auto square = product(base, base);
    Quiver q = kronecker_quiver(n + 1);
    std::vector<BundleClass> u = {trivial_bundle(base, 1),
                                  line_bundle(basis_element(base, "h"))};
    auto res = quiver_resolution(q, u);
    return DiagonalRun{base, square, std::move(res),
                       HomDimProvider::acyclic_path_count(std::move(q))};
}

DiagonalRun diagonal_setup_grassmannian() {
    auto base = grassmannian(2, 4);
    auto square = product(base, base);
    Quiver q = kronecker_quiver(4);
    // tautological quotient: c = 1 + s[1] + s[2]
    BundleClass quotient(
        2, ring_unit(base) + basis_element(base, "s[1]") + basis_element(base, "s[2]"));
    std::vector<BundleClass> u = {trivial_bundle(base, 1), std::move(quotient)};
    auto res = quiver_resolution(q, u);
    return DiagonalRun{base, square, std::move(res),
                       HomDimProvider::acyclic_path_count(std::move(q))};
}

DiagonalRun diagonal_setup_gt(const std::vector<long long>& t) {
    auto base = projective_space(0);
    auto square = product(base, base);
    std::vector<BundleClass> a;
    for (long long tn : t)
        a.push_back(trivial_bundle(base, std::max(tn, 0LL)));
    auto res = gt_resolution(t, a);
    return DiagonalRun{base, square, std::move(res), HomDimProvider::graded_binary()};
}

DiagonalRun diagonal_setup_p2(const P2Config& cfg) {
    auto base = projective_space(0);
    auto square = product(base, base);
    auto al = cfg.alpha();
    std::vector<BundleClass> u = {trivial_bundle(base, al[0]),
                                  trivial_bundle(base, al[1]),
                                  trivial_bundle(base, al[2])};
    auto res = p2_resolution(cfg, u);
    return DiagonalRun{base, square, std::move(res),
                       HomDimProvider::symmetric_triple_quiver()};
}

}  // namespace chowdiag
