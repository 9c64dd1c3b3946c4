#include "chowdiag/chernclass.hpp"

namespace chowdiag {

namespace {

Rational factorial(int k) {
    Rational out(1);
    for (int i = 2; i <= k; i++) out *= to_rational(i);
    return out;
}

}  // namespace

BundleClass::BundleClass(long long rank, RingElement total_chern)
    : rank_(rank), total_chern_(std::move(total_chern)) {
    if (total_chern_.degree_component(0) != ring_unit(total_chern_.ring()))
        throw InvalidArgument("total Chern class must have degree-0 part 1");
}

bool operator==(const BundleClass& a, const BundleClass& b) {
    return a.rank_ == b.rank_ && a.total_chern_ == b.total_chern_;
}

bool operator!=(const BundleClass& a, const BundleClass& b) { return !(a == b); }

BundleClass trivial_bundle(RingPtr r, long long rank) {
    if (rank < 0) throw InvalidArgument("trivial bundle needs rank >= 0");
    return BundleClass(rank, ring_unit(std::move(r)));
}

BundleClass line_bundle(const RingElement& c1) {
    if (c1 != c1.degree_component(1))
        throw InvalidArgument("first Chern class must be homogeneous of degree 1");
    return BundleClass(1, ring_unit(c1.ring()) + c1);
}

BundleClass whitney_sum(const BundleClass& a, const BundleClass& b) {
    return BundleClass(a.rank() + b.rank(), a.total_chern() * b.total_chern());
}

BundleClass direct_sum(const BundleClass& a, long long copies) {
    if (copies < 0) throw InvalidArgument("direct sum needs copies >= 0");
    RingElement total = ring_unit(a.ring());
    for (long long i = 0; i < copies; i++) total = total * a.total_chern();
    return BundleClass(a.rank() * copies, std::move(total));
}

BundleClass dual(const BundleClass& a) {
    RingElement out = ring_zero(a.ring());
    for (int d = 0; d <= a.ring()->top_degree(); d++) {
        auto part = a.total_chern().degree_component(d);
        out = out + (d % 2 ? -part : part);
    }
    return BundleClass(a.rank(), std::move(out));
}

RingElement chern_character(const BundleClass& a) {
    if (a.rank() < 0)
        throw NegativeRank("chern_character needs a genuine (nonnegative) rank");
    const auto& r = a.ring();
    int d = r->top_degree();
    // Newton's identities: p_k = sum_{i<k} (-1)^{i+1} e_i p_{k-i} + (-1)^{k+1} k e_k
    std::vector<RingElement> e, p;
    e.push_back(ring_unit(r));
    p.push_back(ring_zero(r));  // p_0 unused
    for (int k = 1; k <= d; k++) {
        e.push_back(a.total_chern().degree_component(k));
        RingElement pk = ring_zero(r);
        for (int i = 1; i < k; i++) {
            auto term = e[i] * p[k - i];
            pk = pk + (i % 2 ? term : -term);
        }
        auto last = to_rational(k) * e[k];
        pk = pk + (k % 2 ? last : -last);
        p.push_back(std::move(pk));
    }
    RingElement ch = to_rational(a.rank()) * ring_unit(r);
    for (int k = 1; k <= d; k++) ch = ch + Rational(1) / factorial(k) * p[k];
    return ch;
}

BundleClass from_character(const RingElement& ch, long long rank) {
    const auto& r = ch.ring();
    int d = r->top_degree();
    if (ch.degree_component(0) != to_rational(rank) * ring_unit(r))
        throw RankMismatch("degree-0 part of the character must equal the rank");
    // recover power sums, then elementary parts: k e_k = sum (-1)^{i-1} e_{k-i} p_i
    std::vector<RingElement> e, p;
    e.push_back(ring_unit(r));
    p.push_back(ring_zero(r));
    for (int k = 1; k <= d; k++) p.push_back(factorial(k) * ch.degree_component(k));
    RingElement total = ring_unit(r);
    for (int k = 1; k <= d; k++) {
        RingElement ek = ring_zero(r);
        for (int i = 1; i <= k; i++) {
            auto term = e[k - i] * p[i];
            ek = ek + (i % 2 ? term : -term);
        }
        ek = Rational(1, static_cast<unsigned long>(k)) * ek;
        e.push_back(ek);
        total = total + ek;
    }
    if (!total.is_integral())
        throw NotIntegral("recovered Chern class is not integral: " +
                          total.to_string());
    return BundleClass(rank, std::move(total));
}

BundleClass hom_bundle(const BundleClass& e, const BundleClass& f) {
    if (e.ring() != f.ring()) throw RingMismatch("hom_bundle needs one ring");
    auto ch = chern_character(dual(e)) * chern_character(f);
    return from_character(ch, e.rank() * f.rank());
}

BundleClass virtual_difference(const BundleClass& a, const BundleClass& b) {
    if (a.ring() != b.ring()) throw RingMismatch("virtual difference needs one ring");
    const auto& r = a.ring();
    int d = r->top_degree();
    // c(b)^{-1} = sum u^m with u = 1 - c(b), nilpotent past the top degree
    RingElement u = ring_unit(r) - b.total_chern();
    RingElement inv = ring_unit(r), power = ring_unit(r);
    for (int m = 1; m <= d; m++) {
        power = power * u;
        inv = inv + power;
    }
    return BundleClass(a.rank() - b.rank(), a.total_chern() * inv);
}

RingElement top_class(const BundleClass& v, int m) {
    if (m < 0 || m > v.ring()->top_degree())
        throw InvalidArgument("top-class degree out of range");
    auto out = v.total_chern().degree_component(m);
    if (!out.is_integral())
        throw NotIntegral("Chern class component is not integral: " + out.to_string());
    return out;
}

BundleClass tensor_line(const BundleClass& a, const RingElement& c1) {
    if (c1.ring() != a.ring()) throw RingMismatch("tensor_line needs one ring");
    if (c1 != c1.degree_component(1))
        throw InvalidArgument("line class must be homogeneous of degree 1");
    const auto& r = a.ring();
    int d = r->top_degree();
    RingElement exp = ring_unit(r), power = ring_unit(r);
    for (int k = 1; k <= d; k++) {
        power = power * c1;
        exp = exp + Rational(1) / factorial(k) * power;
    }
    return from_character(chern_character(a) * exp, a.rank());
}

}  // namespace chowdiag
