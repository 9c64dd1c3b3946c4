#include "chowdiag/quiverrep.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace chowdiag {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<ArrowSpec> arrows)
    : vertices_(std::move(vertices)) {
    std::set<std::string> seen_v(vertices_.begin(), vertices_.end());
    if (seen_v.size() != vertices_.size())
        throw InvalidArgument("duplicate vertex id");
    std::set<std::string> seen_a;
    for (const auto& a : arrows) {
        if (!seen_a.insert(a.id).second)
            throw InvalidArgument("duplicate arrow id '" + a.id + "'");
        arrows_.push_back({a.id, vertex_index(a.tail), vertex_index(a.head)});
    }

    // Kahn's algorithm; a full order exists exactly when the quiver is acyclic.
    std::size_t n = vertices_.size();
    std::vector<std::size_t> indeg(n, 0);
    for (const auto& a : arrows_) indeg[a.head]++;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; i++)
        if (indeg[i] == 0) order.push_back(i);
    for (std::size_t k = 0; k < order.size(); k++)
        for (const auto& a : arrows_)
            if (a.tail == order[k] && --indeg[a.head] == 0) order.push_back(a.head);
    acyclic_ = order.size() == n;

    if (acyclic_) {
        path_counts_.assign(n, std::vector<long long>(n, 0));
        // accumulate in reverse topological order: paths(i,j) =
        // [i == j] + sum over arrows out of i of paths(head, j)
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            std::size_t i = *it;
            path_counts_[i][i] = 1;
            for (const auto& a : arrows_) {
                if (a.tail != i) continue;
                for (std::size_t j = 0; j < n; j++)
                    path_counts_[i][j] += path_counts_[a.head][j];
            }
        }
    }
}

std::size_t Quiver::vertex_index(const std::string& id) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), id);
    if (it == vertices_.end()) throw InvalidArgument("unknown vertex '" + id + "'");
    return static_cast<std::size_t>(it - vertices_.begin());
}

long long Quiver::path_count(std::size_t from, std::size_t to) const {
    if (!acyclic_) throw CyclicQuiver("path counting needs an acyclic quiver");
    if (from >= vertices_.size() || to >= vertices_.size())
        throw InvalidArgument("vertex index out of range");
    return path_counts_[from][to];
}

long long Quiver::path_count(const std::string& from, const std::string& to) const {
    return path_count(vertex_index(from), vertex_index(to));
}

bool Quiver::operator==(const Quiver& other) const {
    if (vertices_ != other.vertices_) return false;
    if (arrows_.size() != other.arrows_.size()) return false;
    for (std::size_t i = 0; i < arrows_.size(); i++) {
        const Arrow &a = arrows_[i], &b = other.arrows_[i];
        if (a.id != b.id || a.tail != b.tail || a.head != b.head) return false;
    }
    return true;
}

namespace {

void check_dims(const Quiver& q, const DimVector& d) {
    if (d.size() != q.vertices().size())
        throw InvalidArgument("dimension vector length does not match the quiver");
    for (long long x : d)
        if (x < 0) throw InvalidArgument("negative fiber dimension");
}

}  // namespace

long long euler_form(const Quiver& q, const DimVector& a, const DimVector& b) {
    check_dims(q, a);
    check_dims(q, b);
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); i++) s += a[i] * b[i];
    for (const auto& arr : q.arrows()) s -= a[arr.tail] * b[arr.head];
    return s;
}

long long moduli_dimension(const Quiver& q, const DimVector& a) {
    if (!q.acyclic()) throw CyclicQuiver("moduli dimension needs an acyclic quiver");
    return 1 - euler_form(q, a, a);
}

Representation::Representation(Quiver q, FieldTag field, DimVector dims,
                               std::map<std::string, ExactMatrix> matrices)
    : quiver_(std::move(q)), field_(field), dims_(std::move(dims)) {
    check_dims(quiver_, dims_);
    for (const auto& a : quiver_.arrows()) {
        auto it = matrices.find(a.id);
        if (it == matrices.end())
            throw InvalidArgument("missing matrix for arrow '" + a.id + "'");
        const ExactMatrix& m = it->second;
        if (m.rows() != static_cast<std::size_t>(dims_[a.head]) ||
            m.cols() != static_cast<std::size_t>(dims_[a.tail]))
            throw InvalidArgument("matrix shape for arrow '" + a.id +
                                  "' does not match the dimension vector");
        if (m.modulus() != field_.p)
            throw FieldMismatch("matrix field for arrow '" + a.id +
                                "' does not match the representation field");
        matrices_.push_back(m);
    }
    if (matrices.size() != quiver_.arrows().size())
        throw InvalidArgument("matrix given for an arrow the quiver does not have");
}

HomExt hom_ext(const Representation& e, const Representation& f) {
    if (!(e.quiver() == f.quiver()))
        throw QuiverMismatch("Hom/Ext between representations of different quivers");
    if (!(e.field() == f.field()))
        throw FieldMismatch("Hom/Ext between representations over different fields");

    const Quiver& q = e.quiver();
    std::size_t nv = q.vertices().size();
    // unknowns: one matrix block gamma_i of shape fdim_i x edim_i per vertex
    std::vector<std::size_t> offset(nv + 1, 0);
    for (std::size_t i = 0; i < nv; i++)
        offset[i + 1] = offset[i] + static_cast<std::size_t>(e.dims()[i] * f.dims()[i]);
    std::size_t n_unknowns = offset[nv];

    std::size_t n_rows = 0;
    for (const auto& a : q.arrows())
        n_rows += static_cast<std::size_t>(e.dims()[a.tail] * f.dims()[a.head]);

    ExactMatrix d(n_rows, n_unknowns, e.field().p);
    std::size_t row0 = 0;
    for (std::size_t ai = 0; ai < q.arrows().size(); ai++) {
        const Arrow& a = q.arrows()[ai];
        std::size_t et = static_cast<std::size_t>(e.dims()[a.tail]);
        std::size_t fh = static_cast<std::size_t>(f.dims()[a.head]);
        std::size_t ft = static_cast<std::size_t>(f.dims()[a.tail]);
        const ExactMatrix& phi_e = e.matrix(ai);
        const ExactMatrix& phi_f = f.matrix(ai);
        // equation (d gamma)_a[r,c] = sum_k phiF[r,k] gamma_tail[k,c]
        //                            - sum_k gamma_head[r,k] phiE[k,c]
        for (std::size_t r = 0; r < fh; r++)
            for (std::size_t c = 0; c < et; c++) {
                std::size_t row = row0 + r * et + c;
                for (std::size_t k = 0; k < ft; k++) {
                    std::size_t var = offset[a.tail] + k * et + c;
                    d.set(row, var, d.at(row, var) + phi_f.at(r, k));
                }
                std::size_t eh = static_cast<std::size_t>(e.dims()[a.head]);
                for (std::size_t k = 0; k < eh; k++) {
                    std::size_t var =
                        offset[a.head] + r * eh + k;
                    d.set(row, var, d.at(row, var) - phi_e.at(k, c));
                }
            }
        row0 += fh * et;
    }

    std::size_t rk = d.rank();
    return {static_cast<long long>(n_unknowns - rk),
            static_cast<long long>(n_rows - rk)};
}

namespace {

void check_weight(const Representation& e, const Weight& theta) {
    if (theta.size() != e.quiver().vertices().size())
        throw InvalidArgument("weight length does not match the quiver");
    Rational pairing(0);
    for (std::size_t i = 0; i < theta.size(); i++)
        pairing += theta[i] * Rational(static_cast<long>(e.dims()[i]));
    if (pairing != 0)
        throw WeightNotOrthogonal("weight pairs to " + rational_to_string(pairing) +
                                  " with the dimension vector, not 0");
}

// All subspaces of F_p^n as reduced row echelon bases.
std::vector<ExactMatrix> all_subspaces(std::size_t n, unsigned long p) {
    std::vector<ExactMatrix> out;
    out.emplace_back(0, n, p);  // zero subspace
    std::vector<std::size_t> pivots;
    // choose pivot columns, then run an odometer over the free positions
    std::vector<bool> choose(n, false);
    for (std::size_t k = 1; k <= n; k++) {
        std::fill(choose.begin(), choose.end(), false);
        std::fill(choose.begin(), choose.begin() + static_cast<long>(k), true);
        // iterate over all k-subsets via std::prev_permutation on the mask
        do {
            pivots.clear();
            for (std::size_t i = 0; i < n; i++)
                if (choose[i]) pivots.push_back(i);
            // free positions: (row r, col c) with c > pivots[r], c not a pivot
            std::vector<std::pair<std::size_t, std::size_t>> free_pos;
            for (std::size_t r = 0; r < k; r++)
                for (std::size_t c = pivots[r] + 1; c < n; c++)
                    if (!choose[c]) free_pos.push_back({r, c});
            std::vector<unsigned long> vals(free_pos.size(), 0);
            for (;;) {
                ExactMatrix m(k, n, p);
                for (std::size_t r = 0; r < k; r++) m.set(r, pivots[r], Rational(1));
                for (std::size_t idx = 0; idx < free_pos.size(); idx++)
                    m.set(free_pos[idx].first, free_pos[idx].second,
                          Rational(static_cast<long>(vals[idx])));
                out.push_back(std::move(m));
                std::size_t carry = 0;
                while (carry < vals.size()) {
                    if (++vals[carry] < p) break;
                    vals[carry++] = 0;
                }
                if (carry == vals.size()) break;
            }
        } while (std::prev_permutation(choose.begin(), choose.end()));
    }
    return out;
}

// Reduce v against an RREF basis; v lies in the span iff the residue is 0.
bool in_span(const ExactMatrix& rref_basis, std::vector<Rational> v, unsigned long p) {
    for (std::size_t r = 0; r < rref_basis.rows(); r++) {
        std::size_t lead = 0;
        while (lead < rref_basis.cols() && rref_basis.at(r, lead) == 0) lead++;
        if (lead == rref_basis.cols()) continue;
        if (v[lead] == 0) continue;
        Rational factor = v[lead];
        for (std::size_t j = lead; j < rref_basis.cols(); j++)
            v[j] = fp_reduce(v[j] - factor * rref_basis.at(r, j), p);
    }
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace

bool theta_stable_subsets(const Representation& e, const Weight& theta) {
    check_weight(e, theta);
    const Quiver& q = e.quiver();
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < e.dims().size(); i++) {
        if (e.dims()[i] > 1)
            throw UnsupportedInstance(
                "subset checker needs all fiber dimensions <= 1");
        if (e.dims()[i] == 1) support.push_back(i);
    }
    std::size_t m = support.size();
    if (m == 0) return true;
    // nonzero proper subsets of the support, closed under arrows whose
    // matrix is nonzero
    for (std::size_t mask = 1; mask + 1 < (std::size_t(1) << m); mask++) {
        std::vector<bool> in(e.dims().size(), false);
        for (std::size_t b = 0; b < m; b++)
            if (mask & (std::size_t(1) << b)) in[support[b]] = true;
        bool closed = true;
        for (std::size_t ai = 0; ai < q.arrows().size() && closed; ai++) {
            const Arrow& a = q.arrows()[ai];
            const ExactMatrix& mat = e.matrix(ai);
            bool nonzero = mat.rows() == 1 && mat.cols() == 1 && mat.at(0, 0) != 0;
            if (nonzero && in[a.tail] && !in[a.head]) closed = false;
        }
        if (!closed) continue;
        Rational weight(0);
        for (std::size_t i = 0; i < in.size(); i++)
            if (in[i]) weight += theta[i];
        if (weight <= 0) return false;
    }
    return true;
}

bool theta_stable_bruteforce(const Representation& e, const Weight& theta) {
    check_weight(e, theta);
    if (!e.field().p)
        throw UnsupportedInstance(
            "subspace enumeration needs a finite coefficient field");
    unsigned long p = *e.field().p;
    if (p > 7)
        throw UnsupportedInstance("subspace enumeration restricted to p <= 7");

    const Quiver& q = e.quiver();
    std::size_t nv = q.vertices().size();
    std::vector<std::vector<ExactMatrix>> spaces(nv);
    double work = 1;
    for (std::size_t i = 0; i < nv; i++) {
        spaces[i] = all_subspaces(static_cast<std::size_t>(e.dims()[i]), p);
        work *= static_cast<double>(spaces[i].size());
        if (work > 1e7)
            throw UnsupportedInstance("subspace enumeration too large");
    }

    std::vector<std::size_t> pick(nv, 0);
    for (;;) {
        // skip the zero and the full tuple
        bool all_zero = true, all_full = true;
        for (std::size_t i = 0; i < nv; i++) {
            if (spaces[i][pick[i]].rows() != 0) all_zero = false;
            if (spaces[i][pick[i]].rows() != static_cast<std::size_t>(e.dims()[i]))
                all_full = false;
        }
        if (!all_zero && !all_full) {
            bool closed = true;
            for (std::size_t ai = 0; ai < q.arrows().size() && closed; ai++) {
                const Arrow& a = q.arrows()[ai];
                const ExactMatrix& sub_t = spaces[a.tail][pick[a.tail]];
                const ExactMatrix& sub_h = spaces[a.head][pick[a.head]];
                const ExactMatrix& phi = e.matrix(ai);
                for (std::size_t r = 0; r < sub_t.rows() && closed; r++) {
                    std::vector<Rational> img(phi.rows(), Rational(0));
                    for (std::size_t i2 = 0; i2 < phi.rows(); i2++) {
                        for (std::size_t j = 0; j < phi.cols(); j++)
                            img[i2] += phi.at(i2, j) * sub_t.at(r, j);
                        img[i2] = fp_reduce(img[i2], p);
                    }
                    if (!in_span(sub_h, img, p)) closed = false;
                }
            }
            if (closed) {
                Rational weight(0);
                for (std::size_t i = 0; i < nv; i++)
                    weight += theta[i] * Rational(static_cast<long>(spaces[i][pick[i]].rows()));
                if (weight <= 0) return false;
            }
        }
        std::size_t carry = 0;
        while (carry < nv) {
            if (++pick[carry] < spaces[carry].size()) break;
            pick[carry++] = 0;
        }
        if (carry == nv) break;
    }
    return true;
}

bool is_theta_stable(const Representation& e, const Weight& theta) {
    check_weight(e, theta);
    bool thin = std::all_of(e.dims().begin(), e.dims().end(),
                            [](long long d) { return d <= 1; });
    if (thin) return theta_stable_subsets(e, theta);
    if (e.field().p) return theta_stable_bruteforce(e, theta);
    throw UnsupportedInstance(
        "no exact stability checker for this field and dimension vector");
}

DimVector generated_subrep(
    const Representation& e,
    const std::map<std::string, std::vector<std::vector<Rational>>>& seeds) {
    const Quiver& q = e.quiver();
    std::size_t nv = q.vertices().size();
    std::optional<unsigned long> p = e.field().p;

    // per-vertex spans maintained as reduced row lists
    std::vector<std::vector<std::vector<Rational>>> span(nv);
    auto norm = [&](const Rational& x) { return p ? fp_reduce(x, *p) : x; };
    auto add_vector = [&](std::size_t v, std::vector<Rational> vec) -> bool {
        for (const auto& row : span[v]) {
            std::size_t lead = 0;
            while (lead < row.size() && row[lead] == 0) lead++;
            if (lead < row.size() && vec[lead] != 0) {
                Rational factor = vec[lead];
                for (std::size_t j = 0; j < vec.size(); j++)
                    vec[j] = norm(vec[j] - factor * row[j]);
            }
        }
        std::size_t lead = 0;
        while (lead < vec.size() && vec[lead] == 0) lead++;
        if (lead == vec.size()) return false;
        Rational inv = vec[lead];
        for (auto& x : vec) x = norm(x / inv);
        // keep earlier rows reduced against the new one
        for (auto& row : span[v]) {
            if (row[lead] == 0) continue;
            Rational factor = row[lead];
            for (std::size_t j = 0; j < row.size(); j++)
                row[j] = norm(row[j] - factor * vec[j]);
        }
        span[v].push_back(std::move(vec));
        return true;
    };

    for (const auto& [vid, vecs] : seeds) {
        std::size_t v = q.vertex_index(vid);
        for (const auto& vec : vecs) {
            if (vec.size() != static_cast<std::size_t>(e.dims()[v]))
                throw InvalidArgument("seed length does not match the fiber at '" +
                                      vid + "'");
            std::vector<Rational> w(vec.size());
            for (std::size_t j = 0; j < vec.size(); j++) w[j] = norm(vec[j]);
            add_vector(v, std::move(w));
        }
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t ai = 0; ai < q.arrows().size(); ai++) {
            const Arrow& a = q.arrows()[ai];
            const ExactMatrix& phi = e.matrix(ai);
            auto rows = span[a.tail];  // copy: add_vector mutates span
            for (const auto& vec : rows) {
                std::vector<Rational> img(phi.rows(), Rational(0));
                for (std::size_t i = 0; i < phi.rows(); i++) {
                    for (std::size_t j = 0; j < phi.cols(); j++)
                        img[i] += phi.at(i, j) * vec[j];
                    img[i] = norm(img[i]);
                }
                if (add_vector(a.head, std::move(img))) changed = true;
            }
        }
    }

    DimVector out(nv);
    for (std::size_t i = 0; i < nv; i++) out[i] = static_cast<long long>(span[i].size());
    return out;
}

Representation reduce_mod_p(const Representation& e, unsigned long p) {
    if (e.field().p)
        throw InvalidArgument("representation is already over a finite field");
    std::map<std::string, ExactMatrix> mats;
    for (std::size_t ai = 0; ai < e.quiver().arrows().size(); ai++) {
        const ExactMatrix& src = e.matrix(ai);
        ExactMatrix dst(src.rows(), src.cols(), p);
        for (std::size_t i = 0; i < src.rows(); i++)
            for (std::size_t j = 0; j < src.cols(); j++) dst.set(i, j, src.at(i, j));
        mats.emplace(e.quiver().arrows()[ai].id, std::move(dst));
    }
    return Representation(e.quiver(), FieldTag{p}, e.dims(), std::move(mats));
}

}  // namespace chowdiag
