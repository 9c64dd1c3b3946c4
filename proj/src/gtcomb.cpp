#include "chowdiag/gtcomb.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "chowdiag/errors.hpp"

namespace chowdiag {

HilbertFunction::HilbertFunction(std::vector<long long> values)
    : values_(std::move(values)) {
    for (long long v : values_)
        if (v < 0)
            throw InvalidArgument("Hilbert function entries must be nonnegative");
    while (!values_.empty() && values_.back() == 0) values_.pop_back();
}

long long HilbertFunction::sum() const {
    return std::accumulate(values_.begin(), values_.end(), 0LL);
}

bool is_admissible(const HilbertFunction& t) {
    const auto& v = t.values();
    if (v.empty() || v[0] != 1) return false;
    for (std::size_t n = 0; n < v.size(); n++) {
        long long next = n + 1 < v.size() ? v[n + 1] : 0;
        if (v[n] > static_cast<long long>(n) + 1) return false;
        if (v[n] <= static_cast<long long>(n) && next > v[n]) return false;
    }
    return true;
}

std::vector<HilbertFunction> enumerate_admissible(long long max_sum) {
    if (max_sum < 0) throw InvalidArgument("max_sum must be nonnegative");
    std::vector<HilbertFunction> out;
    if (max_sum == 0) return out;
    std::vector<long long> cur{1};
    // Every prefix built under the growth bound is itself admissible once
    // trailing zeros are trimmed, so each node of the search is emitted.
    std::function<void(long long)> extend = [&](long long remaining) {
        out.push_back(HilbertFunction(cur));
        long long n = static_cast<long long>(cur.size()) - 1;
        long long bound = cur.back() <= n ? cur.back() : n + 2;
        bound = std::min(bound, remaining);
        for (long long v = 1; v <= bound; v++) {
            cur.push_back(v);
            extend(remaining - v);
            cur.pop_back();
        }
    };
    extend(max_sum - 1);
    std::sort(out.begin(), out.end(), [](const HilbertFunction& a, const HilbertFunction& b) {
        if (a.values().size() != b.values().size())
            return a.values().size() < b.values().size();
        return a.values() < b.values();
    });
    return out;
}

Staircase::Staircase(std::vector<long long> heights) : heights_(std::move(heights)) {
    if (heights_.empty())
        throw InvalidArgument("a staircase needs at least one column");
    for (std::size_t i = 0; i < heights_.size(); i++) {
        if (heights_[i] <= 0)
            throw InvalidArgument("staircase heights must be positive");
        if (i > 0 && heights_[i] > heights_[i - 1])
            throw InvalidArgument("staircase heights must be non-increasing");
    }
}

long long Staircase::box_count() const {
    return std::accumulate(heights_.begin(), heights_.end(), 0LL);
}

std::vector<std::pair<long long, long long>> Staircase::generators() const {
    std::vector<std::pair<long long, long long>> gens;
    long long cols = static_cast<long long>(heights_.size());
    for (long long a = 0; a <= cols; a++) {
        long long h = a < cols ? heights_[a] : 0;
        if (a == 0 || h < heights_[a - 1]) gens.push_back({a, h});
    }
    return gens;
}

HilbertFunction hilbert_function(const Staircase& s) {
    const auto& h = s.heights();
    std::vector<long long> t;
    for (std::size_t a = 0; a < h.size(); a++) {
        for (long long b = 0; b < h[a]; b++) {
            std::size_t d = a + static_cast<std::size_t>(b);
            if (t.size() <= d) t.resize(d + 1, 0);
            t[d]++;
        }
    }
    return HilbertFunction(std::move(t));
}

std::vector<Staircase> enumerate_staircases(const HilbertFunction& t) {
    if (!is_admissible(t))
        throw NotAdmissible("the Hilbert function is not realizable in two variables");
    long long total = t.sum();
    // Standard monomials have degree < the support length, so both the
    // number of columns and the tallest column are bounded by it.
    long long cap = static_cast<long long>(t.values().size());
    std::vector<Staircase> out;
    std::vector<long long> cur;
    std::function<void(long long, long long)> walk = [&](long long max_h, long long remaining) {
        if (remaining == 0) {
            Staircase s(cur);
            if (hilbert_function(s) == t) out.push_back(s);
            return;
        }
        if (static_cast<long long>(cur.size()) >= cap) return;
        for (long long h = 1; h <= std::min(max_h, remaining); h++) {
            cur.push_back(h);
            walk(h, remaining - h);
            cur.pop_back();
        }
    };
    walk(cap, total);
    return out;  // the walk emits height vectors in ascending lexicographic order
}

long long tangent_dimension(const Staircase& s) {
    const auto& h = s.heights();
    long long cols = static_cast<long long>(h.size());
    auto standard = [&](long long a, long long b) {
        return a >= 0 && b >= 0 && a < cols && b < h[a];
    };
    // Standard monomials x^a y^b of one degree, ascending in a.
    auto basis = [&](long long d) {
        std::vector<std::pair<long long, long long>> mons;
        for (long long a = 0; a <= d; a++)
            if (standard(a, d - a)) mons.push_back({a, d - a});
        return mons;
    };

    auto gens = s.generators();
    std::vector<std::vector<std::pair<long long, long long>>> gbasis(gens.size());
    std::vector<std::size_t> offset(gens.size() + 1, 0);
    for (std::size_t i = 0; i < gens.size(); i++) {
        gbasis[i] = basis(gens[i].first + gens[i].second);
        offset[i + 1] = offset[i] + gbasis[i].size();
    }
    std::size_t unknowns = offset.back();

    // One block of constraints per consecutive pair (g_i, g_{i+1}):
    // x^da phi(g_i) = y^db phi(g_{i+1}) in S/I, where x^da g_i and
    // y^db g_{i+1} both equal their least common multiple.
    std::vector<std::map<std::size_t, long long>> rows;
    for (std::size_t i = 0; i + 1 < gens.size(); i++) {
        long long da = gens[i + 1].first - gens[i].first;
        long long db = gens[i].second - gens[i + 1].second;
        auto target = basis(gens[i + 1].first + gens[i].second);
        std::map<std::pair<long long, long long>, std::size_t> pos;
        for (std::size_t k = 0; k < target.size(); k++) pos[target[k]] = k;
        std::vector<std::map<std::size_t, long long>> block(target.size());
        for (std::size_t k = 0; k < gbasis[i].size(); k++) {
            auto [a, b] = gbasis[i][k];
            if (standard(a + da, b)) block[pos.at({a + da, b})][offset[i] + k] += 1;
        }
        for (std::size_t k = 0; k < gbasis[i + 1].size(); k++) {
            auto [a, b] = gbasis[i + 1][k];
            if (standard(a, b + db)) block[pos.at({a, b + db})][offset[i + 1] + k] -= 1;
        }
        for (auto& r : block) rows.push_back(std::move(r));
    }

    ExactMatrix m(rows.size(), unknowns);
    for (std::size_t r = 0; r < rows.size(); r++)
        for (const auto& [c, coeff] : rows[r]) m.set(r, c, to_rational(coeff));
    return static_cast<long long>(unknowns) - static_cast<long long>(m.rank());
}

long long gt_dimension(const HilbertFunction& t) {
    if (!is_admissible(t))
        throw NotAdmissible("the Hilbert function is not realizable in two variables");
    const auto& v = t.values();
    long long form = 0;
    for (std::size_t i = 0; i < v.size(); i++) {
        form += v[i] * v[i];
        if (i + 1 < v.size()) form -= 2 * v[i] * v[i + 1];
        if (i + 2 < v.size()) form += v[i] * v[i + 2];
    }
    return 1 - form;
}

GTQuiverData gt_quiver(const HilbertFunction& t) {
    const auto& v = t.values();
    if (v.empty() || v[0] != 1)
        throw NonUnitT0("the quiver presentation requires t_0 = 1");
    if (!is_admissible(t))
        throw NotAdmissible("the Hilbert function is not realizable in two variables");

    std::size_t q = v.size() - 1;
    std::vector<std::string> vertices;
    for (std::size_t i = 0; i <= q; i++) vertices.push_back(std::to_string(i));
    std::vector<Quiver::ArrowSpec> arrows;
    for (std::size_t i = 1; i <= q; i++) {
        std::string tail = std::to_string(i - 1), head = std::to_string(i);
        arrows.push_back({"x" + std::to_string(i), tail, head});
        arrows.push_back({"y" + std::to_string(i), tail, head});
    }
    std::vector<GTRelation> relations;
    for (std::size_t i = 1; i + 1 <= q; i++) {
        std::string si = std::to_string(i), sj = std::to_string(i + 1);
        relations.push_back({{"x" + si, "y" + sj}, {"y" + si, "x" + sj}});
    }

    Weight theta(q + 1, Rational(1));
    theta[0] = to_rational(1 - t.sum());
    return {Quiver(std::move(vertices), std::move(arrows)), std::move(relations), v,
            std::move(theta)};
}

}  // namespace chowdiag
