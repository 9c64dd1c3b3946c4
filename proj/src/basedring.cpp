#include "chowdiag/basedring.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace chowdiag {

namespace {

// sort by index, merge duplicates, drop zero coefficients
Combo normalize_combo(Combo c) {
    std::sort(c.begin(), c.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Combo out;
    for (const auto& [i, v] : c) {
        if (!out.empty() && out.back().first == i)
            out.back().second += v;
        else
            out.push_back({i, v});
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& t) { return t.second == 0; }),
              out.end());
    return out;
}

}  // namespace

BasedRing::BasedRing(std::string label, std::vector<std::string> names,
                     std::vector<int> degrees,
                     std::vector<std::vector<Combo>> products,
                     std::size_t unit_index, Combo degree_functional)
    : label_(std::move(label)),
      names_(std::move(names)),
      degrees_(std::move(degrees)),
      products_(std::move(products)),
      unit_(unit_index),
      functional_(normalize_combo(std::move(degree_functional))) {
    const std::size_t n = names_.size();
    if (n == 0) throw InvalidArgument("ring needs a nonempty basis");
    if (degrees_.size() != n || products_.size() != n)
        throw InvalidArgument("ring table sizes disagree with the basis");
    std::set<std::string> seen;
    for (const auto& nm : names_)
        if (nm.empty() || !seen.insert(nm).second)
            throw InvalidArgument("basis names must be distinct and nonempty");
    for (int d : degrees_) {
        if (d < 0) throw InvalidArgument("negative basis degree");
        top_ = std::max(top_, d);
    }
    if (unit_ >= n || degrees_[unit_] != 0)
        throw InvalidArgument("unit must be a degree-0 basis element");

    for (auto& row : products_) {
        if (row.size() != n)
            throw InvalidArgument("ring table sizes disagree with the basis");
        for (auto& c : row) c = normalize_combo(std::move(c));
    }

    // degree additivity and truncation above the top degree
    for (std::size_t i = 0; i < n; i++)
        for (std::size_t j = 0; j < n; j++) {
            int d = degrees_[i] + degrees_[j];
            for (const auto& [t, v] : products_[i][j]) {
                if (t >= n) throw InvalidArgument("product term out of range");
                if (d > top_ || degrees_[t] != d)
                    throw InvalidArgument("product of " + names_[i] + " and " +
                                          names_[j] + " violates the grading");
            }
        }

    // unit law and commutativity
    for (std::size_t j = 0; j < n; j++)
        if (products_[unit_][j] != Combo{{j, 1}})
            throw InvalidArgument("unit does not act as identity on " + names_[j]);
    for (std::size_t i = 0; i < n; i++)
        for (std::size_t j = i + 1; j < n; j++)
            if (products_[i][j] != products_[j][i])
                throw InvalidArgument("multiplication not commutative on " +
                                      names_[i] + ", " + names_[j]);

    // associativity on every basis triple, checked with dense accumulators
    std::vector<long long> lhs(n), rhs(n);
    for (std::size_t i = 0; i < n; i++)
        for (std::size_t j = 0; j < n; j++)
            for (std::size_t k = 0; k < n; k++) {
                std::fill(lhs.begin(), lhs.end(), 0);
                std::fill(rhs.begin(), rhs.end(), 0);
                for (const auto& [t, v] : products_[i][j])
                    for (const auto& [u, w] : products_[t][k]) lhs[u] += v * w;
                for (const auto& [t, v] : products_[j][k])
                    for (const auto& [u, w] : products_[i][t]) rhs[u] += v * w;
                if (lhs != rhs)
                    throw InvalidArgument("multiplication not associative on " +
                                          names_[i] + ", " + names_[j] + ", " +
                                          names_[k]);
            }

    if (functional_.empty())
        throw InvalidArgument("degree functional must be nonzero");
    for (const auto& [i, v] : functional_)
        if (i >= n || degrees_[i] != top_)
            throw InvalidArgument("degree functional must live in the top degree");
}

std::size_t BasedRing::find_basis(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); i++)
        if (names_[i] == name) return i;
    throw InvalidArgument("no basis element named " + name + " in " + label_);
}

const Combo& BasedRing::product_combo(std::size_t i, std::size_t j) const {
    return products_.at(i).at(j);
}

// -- elements ------------------------------------------------------------

RingElement::RingElement(RingPtr ring, std::map<std::size_t, Rational> coeffs)
    : ring_(std::move(ring)) {
    if (!ring_) throw InvalidArgument("element needs a ring");
    for (auto& [i, c] : coeffs) {
        if (i >= ring_->size()) throw InvalidArgument("coefficient index out of range");
        c.canonicalize();
        if (c != 0) coeffs_.emplace(i, c);
    }
}

Rational RingElement::coefficient(std::size_t i) const {
    if (i >= ring_->size()) throw InvalidArgument("coefficient index out of range");
    auto it = coeffs_.find(i);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

Rational RingElement::coefficient(const std::string& name) const {
    return coefficient(ring_->find_basis(name));
}

bool RingElement::is_integral() const {
    for (const auto& [i, c] : coeffs_)
        if (c.get_den() != 1) return false;
    return true;
}

RingElement RingElement::degree_component(int d) const {
    std::map<std::size_t, Rational> out;
    for (const auto& [i, c] : coeffs_)
        if (ring_->degree(i) == d) out.emplace(i, c);
    return RingElement(ring_, std::move(out));
}

std::string RingElement::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [i, c] : coeffs_) {
        Rational a = c;
        bool neg = a < 0;
        if (neg) a = -a;
        std::string term =
            a == 1 ? ring_->name(i) : rational_to_string(a) + "*" + ring_->name(i);
        if (first)
            out += (neg ? "-" : "") + term;
        else
            out += (neg ? " - " : " + ") + term;
        first = false;
    }
    return out;
}

namespace {

void require_same_ring(const RingElement& a, const RingElement& b) {
    if (a.ring() != b.ring())
        throw RingMismatch("operands live in different rings");
}

}  // namespace

RingElement operator+(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    std::map<std::size_t, Rational> out = a.coeffs_;
    for (const auto& [i, c] : b.coeffs_) out[i] += c;
    return RingElement(a.ring_, std::move(out));
}

RingElement operator-(const RingElement& a, const RingElement& b) {
    return a + (-b);
}

RingElement operator-(const RingElement& a) {
    std::map<std::size_t, Rational> out;
    for (const auto& [i, c] : a.coeffs_) out.emplace(i, -c);
    return RingElement(a.ring_, std::move(out));
}

RingElement operator*(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    std::map<std::size_t, Rational> out;
    for (const auto& [i, ci] : a.coeffs_)
        for (const auto& [j, cj] : b.coeffs_) {
            Rational c = ci * cj;
            for (const auto& [t, v] : a.ring_->product_combo(i, j))
                out[t] += c * to_rational(v);
        }
    return RingElement(a.ring_, std::move(out));
}

RingElement operator*(const Rational& s, const RingElement& a) {
    std::map<std::size_t, Rational> out;
    for (const auto& [i, c] : a.coeffs_) out.emplace(i, s * c);
    return RingElement(a.ring_, std::move(out));
}

bool operator==(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    return a.coeffs_ == b.coeffs_;
}

bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

RingElement ring_zero(RingPtr r) { return RingElement(std::move(r), {}); }

RingElement ring_unit(RingPtr r) {
    std::size_t u = r->unit_index();
    return RingElement(std::move(r), {{u, Rational(1)}});
}

RingElement basis_element(RingPtr r, std::size_t i) {
    if (i >= r->size()) throw InvalidArgument("basis index out of range");
    return RingElement(std::move(r), {{i, Rational(1)}});
}

RingElement basis_element(RingPtr r, const std::string& name) {
    std::size_t i = r->find_basis(name);
    return RingElement(std::move(r), {{i, Rational(1)}});
}

Rational degree_functional(const RingElement& x) {
    Rational out(0);
    for (const auto& [i, v] : x.ring()->functional_combo())
        out += to_rational(v) * x.coefficient(i);
    return out;
}

// -- test-space constructors ----------------------------------------------

RingPtr projective_space(int n) {
    if (n < 0) throw InvalidArgument("projective space needs n >= 0");
    auto sz = static_cast<std::size_t>(n) + 1;
    std::vector<std::string> names(sz);
    std::vector<int> degrees(sz);
    for (std::size_t i = 0; i < sz; i++) {
        names[i] = i == 0 ? "1" : i == 1 ? "h" : "h^" + std::to_string(i);
        degrees[i] = static_cast<int>(i);
    }
    std::vector<std::vector<Combo>> products(sz, std::vector<Combo>(sz));
    for (std::size_t i = 0; i < sz; i++)
        for (std::size_t j = 0; j < sz; j++)
            if (i + j < sz) products[i][j] = {{i + j, 1}};
    return std::make_shared<const BasedRing>("P^" + std::to_string(n),
                                             std::move(names), std::move(degrees),
                                             std::move(products), 0,
                                             Combo{{sz - 1, 1}});
}

namespace {

using Partition = std::vector<int>;

int partition_size(const Partition& p) {
    return std::accumulate(p.begin(), p.end(), 0);
}

std::string partition_name(const Partition& p) {
    if (p.empty()) return "1";
    std::string out = "s[";
    for (std::size_t i = 0; i < p.size(); i++) {
        if (i) out += ",";
        out += std::to_string(p[i]);
    }
    return out + "]";
}

void collect_partitions(int rows, int cols, int max_part, Partition& cur,
                        std::vector<Partition>& out) {
    out.push_back(cur);
    if (static_cast<int>(cur.size()) == rows) return;
    for (int part = std::min(cols, max_part); part >= 1; part--) {
        cur.push_back(part);
        collect_partitions(rows, cols, part, cur, out);
        cur.pop_back();
    }
}

// partitions inside a rows x cols box, ordered by (size, parts descending)
std::vector<Partition> box_partitions(int rows, int cols) {
    std::vector<Partition> out;
    Partition cur;
    collect_partitions(rows, cols, cols, cur, out);
    std::stable_sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
        int sa = partition_size(a), sb = partition_size(b);
        if (sa != sb) return sa < sb;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    });
    return out;
}

// number of Littlewood-Richardson skew tableaux of shape outer/inner with
// the given content, counted by backtracking in reverse reading order
long long lr_count(const Partition& outer, const Partition& inner,
                   const Partition& content) {
    for (std::size_t r = 0; r < inner.size(); r++) {
        int o = r < outer.size() ? outer[r] : 0;
        if (inner[r] > o) return 0;
    }
    struct Cell {
        int r, c;
    };
    std::vector<Cell> cells;
    for (int r = 0; r < static_cast<int>(outer.size()); r++) {
        int lo = r < static_cast<int>(inner.size()) ? inner[r] : 0;
        for (int c = outer[r] - 1; c >= lo; c--) cells.push_back({r, c});
    }
    if (static_cast<int>(cells.size()) != partition_size(content)) return 0;

    std::vector<std::vector<int>> fill(outer.size());
    for (std::size_t r = 0; r < outer.size(); r++) fill[r].assign(outer[r], 0);
    std::vector<int> used(content.size() + 1, 0);
    long long count = 0;

    auto inner_at = [&](int r) {
        return r < static_cast<int>(inner.size()) ? inner[r] : 0;
    };
    std::function<void(std::size_t)> walk = [&](std::size_t pos) {
        if (pos == cells.size()) {
            count++;
            return;
        }
        auto [r, c] = cells[pos];
        for (int t = 1; t <= static_cast<int>(content.size()); t++) {
            if (used[t] >= content[t - 1]) continue;
            if (t > 1 && used[t] >= used[t - 1]) continue;  // lattice word
            if (c + 1 < outer[r] && t > fill[r][c + 1]) continue;  // weak in rows
            if (r > 0 && c < outer[r - 1] && c >= inner_at(r - 1) &&
                t <= fill[r - 1][c])
                continue;  // strict down columns
            fill[r][c] = t;
            used[t]++;
            walk(pos + 1);
            used[t]--;
            fill[r][c] = 0;
        }
    };
    walk(0);
    return count;
}

}  // namespace

RingPtr grassmannian(int k, int n) {
    if (k <= 0 || k >= n) throw InvalidArgument("grassmannian needs 0 < k < n");
    int rows = k, cols = n - k;
    if (rows > 4 || cols > 4)
        throw UnsupportedInstance("Schubert boxes beyond 4 x 4 are out of scope");

    auto parts = box_partitions(rows, cols);
    const std::size_t sz = parts.size();
    std::map<Partition, std::size_t> index;
    std::vector<std::string> names(sz);
    std::vector<int> degrees(sz);
    for (std::size_t i = 0; i < sz; i++) {
        index[parts[i]] = i;
        names[i] = partition_name(parts[i]);
        degrees[i] = partition_size(parts[i]);
    }
    int top = rows * cols;

    std::vector<std::vector<Combo>> products(sz, std::vector<Combo>(sz));
    for (std::size_t i = 0; i < sz; i++)
        for (std::size_t j = i; j < sz; j++) {
            int d = degrees[i] + degrees[j];
            Combo combo;
            if (d <= top)
                for (std::size_t t = 0; t < sz; t++) {
                    if (degrees[t] != d) continue;
                    long long c = lr_count(parts[t], parts[i], parts[j]);
                    if (c > 0) combo.push_back({t, c});
                }
            products[i][j] = combo;
            products[j][i] = std::move(combo);
        }

    Partition full(static_cast<std::size_t>(rows), cols);
    return std::make_shared<const BasedRing>(
        "Gr(" + std::to_string(k) + "," + std::to_string(n) + ")", std::move(names),
        std::move(degrees), std::move(products), index[{}],
        Combo{{index[full], 1}});
}

// -- products and the Kunneth diagonal -------------------------------------

std::size_t ProductRing::index_of(std::size_t i, std::size_t j) const {
    if (i >= left->size() || j >= right->size())
        throw InvalidArgument("pair index out of range");
    return i * right->size() + j;
}

RingElement ProductRing::p1(const RingElement& x) const {
    if (x.ring() != left) throw RingMismatch("p1 expects an element of the left factor");
    std::map<std::size_t, Rational> out;
    for (const auto& [i, c] : x.coeffs()) out.emplace(index_of(i, right->unit_index()), c);
    return RingElement(ring, std::move(out));
}

RingElement ProductRing::p2(const RingElement& x) const {
    if (x.ring() != right)
        throw RingMismatch("p2 expects an element of the right factor");
    std::map<std::size_t, Rational> out;
    for (const auto& [j, c] : x.coeffs()) out.emplace(index_of(left->unit_index(), j), c);
    return RingElement(ring, std::move(out));
}

RingElement ProductRing::swap_factors(const RingElement& x) const {
    if (left != right)
        throw InvalidArgument("swap_factors needs both factors to be the same ring");
    if (x.ring() != ring)
        throw RingMismatch("swap_factors expects an element of the product ring");
    std::map<std::size_t, Rational> out;
    std::size_t s = right->size();
    for (const auto& [t, c] : x.coeffs()) out.emplace((t % s) * s + t / s, c);
    return RingElement(ring, std::move(out));
}

ProductRing product(RingPtr a, RingPtr b) {
    const std::size_t s1 = a->size(), s2 = b->size(), sz = s1 * s2;
    std::vector<std::string> names(sz);
    std::vector<int> degrees(sz);
    for (std::size_t i = 0; i < s1; i++)
        for (std::size_t j = 0; j < s2; j++) {
            names[i * s2 + j] = a->name(i) + "*" + b->name(j);
            degrees[i * s2 + j] = a->degree(i) + b->degree(j);
        }

    std::vector<std::vector<Combo>> products(sz, std::vector<Combo>(sz));
    for (std::size_t i = 0; i < s1; i++)
        for (std::size_t j = 0; j < s2; j++)
            for (std::size_t i2 = 0; i2 < s1; i2++)
                for (std::size_t j2 = 0; j2 < s2; j2++) {
                    Combo combo;
                    for (const auto& [t, v] : a->product_combo(i, i2))
                        for (const auto& [u, w] : b->product_combo(j, j2))
                            combo.push_back({t * s2 + u, v * w});
                    products[i * s2 + j][i2 * s2 + j2] = std::move(combo);
                }

    Combo functional;
    for (const auto& [i, v] : a->functional_combo())
        for (const auto& [j, w] : b->functional_combo())
            functional.push_back({i * s2 + j, v * w});

    auto ring = std::make_shared<const BasedRing>(
        a->label() + " x " + b->label(), std::move(names), std::move(degrees),
        std::move(products), a->unit_index() * s2 + b->unit_index(),
        std::move(functional));
    return ProductRing{std::move(ring), std::move(a), std::move(b)};
}

ExactMatrix pairing_matrix(const RingPtr& r, int deg) {
    if (deg < 0 || deg > r->top_degree())
        throw InvalidArgument("pairing degree out of range");
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < r->size(); i++) {
        if (r->degree(i) == deg) rows.push_back(i);
        if (r->degree(i) == r->top_degree() - deg) cols.push_back(i);
    }
    ExactMatrix m(rows.size(), cols.size());
    for (std::size_t x = 0; x < rows.size(); x++)
        for (std::size_t y = 0; y < cols.size(); y++) {
            long long val = 0;
            for (const auto& [t, v] : r->product_combo(rows[x], cols[y]))
                for (const auto& [u, w] : r->functional_combo())
                    if (t == u) val += v * w;
            m.set(x, y, Rational(static_cast<long>(val)));
        }
    return m;
}

std::vector<RingElement> dual_basis(const RingPtr& r) {
    std::vector<RingElement> out(r->size(), ring_zero(r));
    std::set<int> degs;
    for (std::size_t i = 0; i < r->size(); i++) degs.insert(r->degree(i));
    for (int d : degs) {
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 0; i < r->size(); i++) {
            if (r->degree(i) == d) rows.push_back(i);
            if (r->degree(i) == r->top_degree() - d) cols.push_back(i);
        }
        ExactMatrix p = pairing_matrix(r, d);
        MatrixSnf snf = p.smith_normal_form();
        std::vector<long long> diag;
        for (const auto& v : snf.diagonal) diag.push_back(v.get_si());
        bool unimodular = rows.size() == cols.size() &&
                          snf.diagonal.size() == rows.size();
        for (const auto& v : snf.diagonal)
            if (v != 1) unimodular = false;
        if (!unimodular)
            throw NotUnimodular("intersection pairing of " + r->label() +
                                    " is not unimodular in degree " +
                                    std::to_string(d),
                                d, std::move(diag));
        // U P V = 1, so P^{-1} = V U
        ExactMatrix inv = snf.right.multiply(snf.left);
        for (std::size_t x = 0; x < rows.size(); x++) {
            std::map<std::size_t, Rational> coeffs;
            for (std::size_t s = 0; s < cols.size(); s++)
                coeffs.emplace(cols[s], inv.at(s, x));
            out[rows[x]] = RingElement(r, std::move(coeffs));
        }
    }
    return out;
}

RingElement kunneth_diagonal(const ProductRing& square) {
    if (square.left != square.right)
        throw InvalidArgument("the diagonal needs both factors to be the same ring");
    auto duals = dual_basis(square.left);
    RingElement out = ring_zero(square.ring);
    for (std::size_t i = 0; i < square.left->size(); i++)
        out = out + square.p1(basis_element(square.left, i)) * square.p2(duals[i]);
    return out;
}

}  // namespace chowdiag
