#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "chowdiag/errors.hpp"
#include "chowdiag/gtcomb.hpp"

using namespace chowdiag;

namespace {

HilbertFunction hf(std::vector<long long> v) { return HilbertFunction(std::move(v)); }

std::vector<long long> heights_of(const std::vector<Staircase>& list, std::size_t i) {
    return list.at(i).heights();
}

// All partitions of n (non-increasing positive parts), classic descending
// recursion — a generator independent of the library's backtracking walk.
void partitions_into(long long n, long long max_part, std::vector<long long>& cur,
                     std::vector<std::vector<long long>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (long long p = std::min(n, max_part); p >= 1; p--) {
        cur.push_back(p);
        partitions_into(n - p, p, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<long long>> partitions(long long n) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> cur;
    partitions_into(n, n, cur, out);
    return out;
}

// Hilbert count straight from the counting formula, independent of the
// library's box-walk accumulation.
std::vector<long long> hilbert_by_formula(const std::vector<long long>& h) {
    long long maxdeg = 0;
    for (std::size_t a = 0; a < h.size(); a++)
        maxdeg = std::max(maxdeg, static_cast<long long>(a) + h[a] - 1);
    std::vector<long long> t(maxdeg + 1, 0);
    for (long long n = 0; n <= maxdeg; n++)
        for (std::size_t a = 0; a <= static_cast<std::size_t>(n) && a < h.size(); a++)
            if (n - static_cast<long long>(a) < h[a]) t[n]++;
    return t;
}

// All candidate value vectors with entries in [0, 6], length <= 7, sum <= 6.
void candidates_into(std::vector<long long>& cur, long long remaining,
                     std::vector<std::vector<long long>>& out) {
    out.push_back(cur);
    if (cur.size() == 7) return;
    for (long long v = 0; v <= remaining; v++) {
        cur.push_back(v);
        candidates_into(cur, remaining - v, out);
        cur.pop_back();
    }
}

// Tangent-space dimension recomputed from the full Taylor-type constraint
// system: one block for EVERY pair of generators, assembled densely.
long long tangent_allpairs(const Staircase& s) {
    const auto& h = s.heights();
    long long cols = static_cast<long long>(h.size());
    auto standard = [&](long long a, long long b) {
        return a >= 0 && b >= 0 && a < cols && b < h[a];
    };
    auto basis = [&](long long d) {
        std::vector<std::pair<long long, long long>> mons;
        for (long long a = 0; a <= d; a++)
            if (standard(a, d - a)) mons.push_back({a, d - a});
        return mons;
    };
    auto gens = s.generators();
    std::vector<std::vector<std::pair<long long, long long>>> gb(gens.size());
    std::vector<std::size_t> off(gens.size() + 1, 0);
    for (std::size_t i = 0; i < gens.size(); i++) {
        gb[i] = basis(gens[i].first + gens[i].second);
        off[i + 1] = off[i] + gb[i].size();
    }
    std::vector<std::vector<long long>> rows;
    for (std::size_t i = 0; i < gens.size(); i++) {
        for (std::size_t j = i + 1; j < gens.size(); j++) {
            long long da = gens[j].first - gens[i].first;
            long long db = gens[i].second - gens[j].second;
            auto target = basis(gens[j].first + gens[i].second);
            for (const auto& tgt : target) {
                std::vector<long long> row(off.back(), 0);
                for (std::size_t k = 0; k < gb[i].size(); k++)
                    if (gb[i][k].first + da == tgt.first && gb[i][k].second == tgt.second)
                        row[off[i] + k] += 1;
                for (std::size_t k = 0; k < gb[j].size(); k++)
                    if (gb[j][k].first == tgt.first && gb[j][k].second + db == tgt.second)
                        row[off[j] + k] -= 1;
                rows.push_back(std::move(row));
            }
        }
    }
    ExactMatrix m(rows.size(), off.back());
    for (std::size_t r = 0; r < rows.size(); r++)
        for (std::size_t c = 0; c < off.back(); c++)
            if (rows[r][c] != 0) m.set(r, c, to_rational(rows[r][c]));
    return static_cast<long long>(off.back()) - static_cast<long long>(m.rank());
}

// Multiplication by cx*x + cy*y from degree d to degree d+1 of the
// staircase quotient, in the standard-monomial bases, over F_p.
ExactMatrix mult_matrix(const Staircase& s, long long d, long long cx, long long cy,
                        unsigned long p) {
    const auto& h = s.heights();
    long long cols = static_cast<long long>(h.size());
    auto standard = [&](long long a, long long b) {
        return a >= 0 && b >= 0 && a < cols && b < h[a];
    };
    auto basis = [&](long long deg) {
        std::vector<std::pair<long long, long long>> mons;
        for (long long a = 0; a <= deg; a++)
            if (standard(a, deg - a)) mons.push_back({a, deg - a});
        return mons;
    };
    auto dom = basis(d), cod = basis(d + 1);
    std::map<std::pair<long long, long long>, std::size_t> pos;
    for (std::size_t k = 0; k < cod.size(); k++) pos[cod[k]] = k;
    ExactMatrix m(cod.size(), dom.size(), p);
    for (std::size_t j = 0; j < dom.size(); j++) {
        auto [a, b] = dom[j];
        if (standard(a + 1, b)) m.set(pos.at({a + 1, b}), j, to_rational(cx));
        if (standard(a, b + 1)) m.set(pos.at({a, b + 1}), j, to_rational(cy));
    }
    return m;
}

// Representation of gt_quiver(t).quiver from a staircase with Hilbert
// function t, twisted by the substitution x -> a x + b y, y -> c x + d y.
Representation staircase_rep(const GTQuiverData& data, const Staircase& s, long long a,
                             long long b, long long c, long long d, unsigned long p) {
    std::map<std::string, ExactMatrix> mats;
    std::size_t q = data.quiver.vertices().size() - 1;
    for (std::size_t i = 1; i <= q; i++) {
        long long deg = static_cast<long long>(i) - 1;
        mats.emplace("x" + std::to_string(i), mult_matrix(s, deg, a, b, p));
        mats.emplace("y" + std::to_string(i), mult_matrix(s, deg, c, d, p));
    }
    return Representation(data.quiver, FieldTag{p}, data.alpha, mats);
}

Representation zero_rep(const GTQuiverData& data, unsigned long p) {
    std::map<std::string, ExactMatrix> mats;
    for (const auto& arr : data.quiver.arrows()) {
        mats.emplace(arr.id, ExactMatrix(data.alpha[arr.head], data.alpha[arr.tail], p));
    }
    return Representation(data.quiver, FieldTag{p}, data.alpha, mats);
}

ExactMatrix relation_side(const Representation& e, const std::array<std::string, 2>& path) {
    const Quiver& q = e.quiver();
    auto idx = [&](const std::string& id) -> std::size_t {
        for (std::size_t i = 0; i < q.arrows().size(); i++)
            if (q.arrows()[i].id == id) return i;
        throw InvalidArgument("unknown arrow " + id);
    };
    // path lists arrows tail-to-head, so the second matrix applies last
    return e.matrix(idx(path[1])).multiply(e.matrix(idx(path[0])));
}

}  // namespace

TEST_CASE("hilbert function values are trimmed and validated") {
    CHECK(hf({1, 2, 1, 0, 0}).values() == std::vector<long long>{1, 2, 1});
    CHECK(hf({0, 0}).values().empty());
    CHECK(hf({1, 2, 1}).sum() == 4);
    CHECK(hf({}).sum() == 0);
    CHECK(hf({1, 2, 1, 0}) == hf({1, 2, 1}));
    CHECK_THROWS_AS(hf({1, -1}), InvalidArgument);
}

TEST_CASE("admissibility criterion on pinned examples") {
    CHECK(is_admissible(hf({1, 2, 1})));
    CHECK_FALSE(is_admissible(hf({1, 3})));
    CHECK_FALSE(is_admissible(hf({1, 1, 2})));
    CHECK(is_admissible(hf({1})));
    CHECK(is_admissible(hf({1, 1})));
    CHECK(is_admissible(hf({1, 2, 3, 4})));
    CHECK_FALSE(is_admissible(hf({})));
    CHECK_FALSE(is_admissible(hf({2})));
    CHECK_FALSE(is_admissible(hf({1, 0, 1})));
    CHECK_FALSE(is_admissible(hf({1, 2, 3, 3, 4})));
    CHECK(is_admissible(hf({1, 2, 3, 3, 3})));
}

TEST_CASE("admissibility equals staircase realizability for sums up to 6") {
    std::vector<std::vector<long long>> cands;
    std::vector<long long> cur;
    candidates_into(cur, 6, cands);
    long long admissible_seen = 0;
    for (const auto& raw : cands) {
        HilbertFunction t(raw);
        long long n = t.sum();
        bool realizable = false;
        if (n > 0) {
            for (const auto& part : partitions(n))
                if (hilbert_by_formula(part) == t.values()) realizable = true;
        }
        CHECK(is_admissible(t) == realizable);
        if (realizable) admissible_seen++;
    }
    CHECK(admissible_seen > 0);
}

TEST_CASE("enumerate_admissible matches the brute-force filter") {
    auto listed = enumerate_admissible(6);
    std::set<std::vector<long long>> got;
    for (const auto& t : listed) {
        CHECK(is_admissible(t));
        CHECK(t.sum() <= 6);
        CHECK(got.insert(t.values()).second);  // pairwise distinct
    }
    std::vector<std::vector<long long>> cands;
    std::vector<long long> cur;
    candidates_into(cur, 6, cands);
    std::set<std::vector<long long>> expected;
    for (const auto& raw : cands) {
        HilbertFunction t(raw);
        if (is_admissible(t)) expected.insert(t.values());
    }
    CHECK(got == expected);

    auto small = enumerate_admissible(3);
    REQUIRE(small.size() == 4);
    CHECK(small[0].values() == std::vector<long long>{1});
    CHECK(small[1].values() == std::vector<long long>{1, 1});
    CHECK(small[2].values() == std::vector<long long>{1, 2});
    CHECK(small[3].values() == std::vector<long long>{1, 1, 1});
    CHECK(enumerate_admissible(0).empty());
}

TEST_CASE("staircase validation and generators") {
    CHECK_THROWS_AS(Staircase({}), InvalidArgument);
    CHECK_THROWS_AS(Staircase({2, 0}), InvalidArgument);
    CHECK_THROWS_AS(Staircase({1, 2}), InvalidArgument);
    CHECK(Staircase({3, 1}).box_count() == 4);

    using Gens = std::vector<std::pair<long long, long long>>;
    CHECK(Staircase({2}).generators() == Gens{{0, 2}, {1, 0}});
    CHECK(Staircase({1}).generators() == Gens{{0, 1}, {1, 0}});
    CHECK(Staircase({2, 2}).generators() == Gens{{0, 2}, {2, 0}});
    CHECK(Staircase({3, 1}).generators() == Gens{{0, 3}, {1, 1}, {2, 0}});
    CHECK(Staircase({2, 1, 1}).generators() == Gens{{0, 2}, {1, 1}, {3, 0}});
}

TEST_CASE("hilbert functions of pinned staircases") {
    CHECK(hilbert_function(Staircase({2, 2})) == hf({1, 2, 1}));
    CHECK(hilbert_function(Staircase({1})) == hf({1}));
    CHECK(hilbert_function(Staircase({3, 1})) == hf({1, 2, 1}));
    CHECK(hilbert_function(Staircase({4, 3, 1})) == hf({1, 2, 3, 2}));
}

TEST_CASE("every staircase yields an admissible function conserving boxes") {
    for (long long n = 1; n <= 9; n++) {
        for (const auto& part : partitions(n)) {
            Staircase s(part);
            HilbertFunction t = hilbert_function(s);
            CHECK(is_admissible(t));
            CHECK(t.sum() == s.box_count());
            CHECK(t.values() == hilbert_by_formula(part));
        }
    }
}

TEST_CASE("staircase enumeration on pinned examples") {
    auto cells = enumerate_staircases(hf({1, 2, 1}));
    REQUIRE(cells.size() == 3);
    CHECK(heights_of(cells, 0) == std::vector<long long>{2, 1, 1});
    CHECK(heights_of(cells, 1) == std::vector<long long>{2, 2});
    CHECK(heights_of(cells, 2) == std::vector<long long>{3, 1});

    auto p1 = enumerate_staircases(hf({1, 1}));
    REQUIRE(p1.size() == 2);
    CHECK(heights_of(p1, 0) == std::vector<long long>{1, 1});
    CHECK(heights_of(p1, 1) == std::vector<long long>{2});

    auto pt = enumerate_staircases(hf({1}));
    REQUIRE(pt.size() == 1);
    CHECK(heights_of(pt, 0) == std::vector<long long>{1});

    CHECK_THROWS_AS(enumerate_staircases(hf({1, 3})), NotAdmissible);
    CHECK_THROWS_AS(enumerate_staircases(hf({2})), NotAdmissible);
}

TEST_CASE("staircase enumeration is exhaustive and duplicate-free") {
    for (const auto& t : enumerate_admissible(8)) {
        auto cells = enumerate_staircases(t);
        std::set<std::vector<long long>> seen;
        for (const auto& s : cells) {
            CHECK(hilbert_function(s) == t);
            CHECK(seen.insert(s.heights()).second);
        }
        std::size_t expected = 0;
        for (const auto& part : partitions(t.sum()))
            if (hilbert_by_formula(part) == t.values()) expected++;
        CHECK(cells.size() == expected);
        CHECK(std::is_sorted(cells.begin(), cells.end(),
                             [](const Staircase& a, const Staircase& b) {
                                 return a.heights() < b.heights();
                             }));
    }
}

TEST_CASE("tangent dimensions on pinned examples") {
    CHECK(tangent_dimension(Staircase({2})) == 1);
    CHECK(tangent_dimension(Staircase({1, 1})) == 1);
    CHECK(tangent_dimension(Staircase({1})) == 0);
    for (const auto& s : enumerate_staircases(hf({1, 2, 1})))
        CHECK(tangent_dimension(s) == 2);
}

TEST_CASE("consecutive syzygies suffice: agreement with the all-pairs system") {
    for (const auto& t : enumerate_admissible(8)) {
        for (const auto& s : enumerate_staircases(t)) {
            CHECK(tangent_dimension(s) == tangent_allpairs(s));
        }
    }
}

TEST_CASE("dimension formula on pinned examples") {
    CHECK(gt_dimension(hf({1, 2, 1})) == 2);
    CHECK(gt_dimension(hf({1, 1})) == 1);
    CHECK(gt_dimension(hf({1})) == 0);
    CHECK_THROWS_AS(gt_dimension(hf({1, 3})), NotAdmissible);
    CHECK_THROWS_AS(gt_dimension(hf({2, 1})), NotAdmissible);
}

TEST_CASE("tangent dimension is constant on cells and equals the formula") {
    for (const auto& t : enumerate_admissible(8)) {
        long long expected = gt_dimension(t);
        for (const auto& s : enumerate_staircases(t)) {
            CHECK(tangent_dimension(s) == expected);
        }
    }
}

TEST_CASE("quiver presentation on pinned examples") {
    auto data = gt_quiver(hf({1, 2, 1}));
    CHECK(data.quiver.vertices() == std::vector<std::string>{"0", "1", "2"});
    REQUIRE(data.quiver.arrows().size() == 4);
    CHECK(data.quiver.arrows()[0].id == "x1");
    CHECK(data.quiver.arrows()[1].id == "y1");
    CHECK(data.quiver.arrows()[2].id == "x2");
    CHECK(data.quiver.arrows()[3].id == "y2");
    CHECK(data.quiver.arrows()[2].tail == data.quiver.vertex_index("1"));
    CHECK(data.quiver.arrows()[2].head == data.quiver.vertex_index("2"));
    REQUIRE(data.relations.size() == 1);
    CHECK(data.relations[0] == GTRelation{{"x1", "y2"}, {"y1", "x2"}});
    CHECK(data.alpha == DimVector{1, 2, 1});
    CHECK(data.theta == Weight{Rational(-3), Rational(1), Rational(1)});

    auto p1 = gt_quiver(hf({1, 1}));
    CHECK(p1.quiver.vertices().size() == 2);
    CHECK(p1.quiver.arrows().size() == 2);
    CHECK(p1.relations.empty());
    CHECK(p1.theta == Weight{Rational(-1), Rational(1)});

    auto wide = gt_quiver(hf({1, 2, 2}));
    CHECK(wide.quiver.vertices().size() == 3);
    CHECK(wide.quiver.arrows().size() == 4);
    CHECK(wide.relations.size() == 1);
    CHECK(wide.alpha == DimVector{1, 2, 2});
    CHECK(wide.theta == Weight{Rational(-4), Rational(1), Rational(1)});

    auto pt = gt_quiver(hf({1}));
    CHECK(pt.quiver.vertices().size() == 1);
    CHECK(pt.quiver.arrows().empty());
    CHECK(pt.relations.empty());
    CHECK(pt.theta == Weight{Rational(0)});

    CHECK_THROWS_AS(gt_quiver(hf({2, 1})), NonUnitT0);
    CHECK_THROWS_AS(gt_quiver(hf({1, 3})), NotAdmissible);
    CHECK_THROWS_AS(gt_quiver(hf({})), NonUnitT0);
}

TEST_CASE("theta pairs to zero against alpha for every admissible function") {
    for (const auto& t : enumerate_admissible(8)) {
        auto data = gt_quiver(t);
        Rational pairing(0);
        for (std::size_t i = 0; i < data.theta.size(); i++)
            pairing += data.theta[i] * to_rational(data.alpha[i]);
        CHECK(pairing == 0);
        CHECK(data.quiver.acyclic());
        CHECK(moduli_dimension(data.quiver, data.alpha) >= gt_dimension(t));
    }
}

TEST_CASE("staircase modules generated at vertex zero are stable") {
    const unsigned long p = 5;
    std::mt19937 rng(321);
    std::uniform_int_distribution<long long> coef(0, p - 1);
    for (auto tvals : {std::vector<long long>{1, 1}, {1, 2, 1}, {1, 2, 2}}) {
        HilbertFunction t(tvals);
        auto data = gt_quiver(t);
        for (const auto& s : enumerate_staircases(t)) {
            // the untwisted monomial module plus several generic twists
            std::vector<std::array<long long, 4>> subs = {{1, 0, 0, 1}};
            while (subs.size() < 5) {
                std::array<long long, 4> m = {coef(rng), coef(rng), coef(rng), coef(rng)};
                if ((m[0] * m[3] - m[1] * m[2]) % p != 0) subs.push_back(m);
            }
            for (const auto& m : subs) {
                Representation e = staircase_rep(data, s, m[0], m[1], m[2], m[3], p);
                for (const auto& rel : data.relations)
                    CHECK(relation_side(e, rel.lhs) == relation_side(e, rel.rhs));
                std::map<std::string, std::vector<std::vector<Rational>>> seed{
                    {"0", {{Rational(1)}}}};
                CHECK(generated_subrep(e, seed) == data.alpha);
                CHECK(is_theta_stable(e, data.theta));
            }
        }
    }
}

TEST_CASE("stability is insensitive to the concrete theta choice") {
    const unsigned long p = 5;
    HilbertFunction t({1, 2, 1});
    auto data = gt_quiver(t);
    // all weights share the sign pattern (-, +, +) and pair to zero with alpha
    std::vector<Weight> thetas = {
        data.theta,
        {Rational(-4), Rational(1), Rational(2)},
        {Rational(-5), Rational(2), Rational(1)},
        {Rational(-11), Rational(3), Rational(5)},
    };
    for (const auto& th : thetas) {
        Rational pairing(0);
        for (std::size_t i = 0; i < th.size(); i++)
            pairing += th[i] * to_rational(data.alpha[i]);
        REQUIRE(pairing == 0);
    }

    std::vector<Representation> samples;
    for (const auto& s : enumerate_staircases(t)) {
        samples.push_back(staircase_rep(data, s, 1, 0, 0, 1, p));
        samples.push_back(staircase_rep(data, s, 2, 1, 1, 3, p));
    }
    samples.push_back(zero_rep(data, p));
    for (const auto& e : samples) {
        bool base = is_theta_stable(e, thetas[0]);
        for (std::size_t i = 1; i < thetas.size(); i++)
            CHECK(is_theta_stable(e, thetas[i]) == base);
    }
}

TEST_CASE("modules not generated at vertex zero are unstable") {
    const unsigned long p = 5;
    HilbertFunction t({1, 2, 1});
    auto data = gt_quiver(t);
    Representation e = zero_rep(data, p);
    std::map<std::string, std::vector<std::vector<Rational>>> seed{{"0", {{Rational(1)}}}};
    CHECK(generated_subrep(e, seed) == DimVector{1, 0, 0});
    CHECK_FALSE(is_theta_stable(e, data.theta));
}
