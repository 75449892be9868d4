#include "amice/measures.hpp"

#include <algorithm>

namespace amice {

bool DiracPoint::is_unit(std::uint32_t p) const {
    if (exact) {
        long long r = n % static_cast<long long>(p);
        return r != 0;
    }
    PValuation v = r.valuation();
    return !v.lower_bound && v.v == 0;
}

PadicScalar DiracPoint::as_scalar(std::uint32_t p, int capacity) const {
    if (exact) return PadicScalar::from_int(p, capacity, n);
    return r.with_capacity(std::min(capacity, r.capacity()));
}

DiracCombination::DiracCombination(RingSpec ring, int arity, std::string label)
    : ring_(ring), arity_(arity), label_(std::move(label)) {
    if (arity != 1 && arity != 2) throw domain_error("measure arity must be 1 or 2");
}

void DiracCombination::add(DiracPoint x, RingElement c) {
    if (arity_ != 1) throw domain_error("one-variable term on a two-variable measure");
    terms_.push_back(DiracTerm{std::move(x), DiracPoint::integer(0), std::move(c)});
}

void DiracCombination::add(DiracPoint x, DiracPoint y, RingElement c) {
    if (arity_ != 2) throw domain_error("two-variable term on a one-variable measure");
    terms_.push_back(DiracTerm{std::move(x), std::move(y), std::move(c)});
}

void DiracCombination::add_int(long long x, long long c) {
    add(DiracPoint::integer(x), RingElement::from_int(ring_, c));
}

void DiracCombination::add_int(long long x, long long y, long long c) {
    add(DiracPoint::integer(x), DiracPoint::integer(y), RingElement::from_int(ring_, c));
}

namespace {

bool same_point(const DiracPoint& a, const DiracPoint& b) {
    if (a.exact != b.exact) return false;
    if (a.exact) return a.n == b.n;
    return a.r.congruent(b.r);
}

bool point_less(const DiracPoint& a, const DiracPoint& b) {
    if (a.exact != b.exact) return a.exact;
    if (a.exact) return a.n < b.n;
    return a.r.residue() < b.r.residue();
}

} // namespace

void DiracCombination::canonicalize() {
    std::stable_sort(terms_.begin(), terms_.end(), [&](const DiracTerm& a, const DiracTerm& b) {
        if (!same_point(a.x, b.x)) return point_less(a.x, b.x);
        return point_less(a.y, b.y);
    });
    std::vector<DiracTerm> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && same_point(merged.back().x, t.x) &&
            (arity_ == 1 || same_point(merged.back().y, t.y))) {
            merged.back().c += t.c;
        } else {
            merged.push_back(std::move(t));
        }
    }
    std::erase_if(merged, [](const DiracTerm& t) { return t.c.is_zero(); });
    terms_ = std::move(merged);
}

bool DiracCombination::all_x_units() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const DiracTerm& t) { return t.x.is_unit(ring_.p); });
}

RingElement DiracCombination::moment_brute(int k, int l) const {
    RingElement sum(ring_);
    for (const auto& t : terms_) {
        PadicScalar xv = t.x.as_scalar(ring_.p, t.x.exact ? ring_.capacity : t.x.r.capacity());
        PadicScalar w = xv.pow(static_cast<unsigned>(k));
        if (arity_ == 2) {
            PadicScalar yv = t.y.as_scalar(ring_.p, t.y.exact ? ring_.capacity : t.y.r.capacity());
            w = w * yv.pow(static_cast<unsigned>(l));
        } else if (l != 0) {
            throw domain_error("moment_brute: y-order on a one-variable measure");
        }
        sum += t.c.scaled(w.with_capacity(ring_.capacity));
    }
    return sum;
}

MeasureSeries amice_transform(const DiracCombination& d, int order_s, int order_t) {
    const RingSpec& ring = d.ring();
    Series out = Series::zero(ring, d.arity(), order_s, d.arity() == 2 ? order_t : 0);
    RingSpec scalar_ring = RingSpec::plain(ring.p, ring.capacity);

    auto point_series = [&](const DiracPoint& pt, int order) {
        if (pt.exact) return binomial_exp_int(scalar_ring, pt.n, order);
        return binomial_exp(pt.r, order, ring.capacity);
    };

    for (const auto& t : d.terms()) {
        Series sx = point_series(t.x, order_s);
        if (d.arity() == 1) {
            for (int i = 0; i <= order_s; ++i)
                out.set(i, out.at(i) + t.c.scaled(sx.at(i).scalar()));
        } else {
            Series sy = point_series(t.y, order_t);
            for (int i = 0; i <= order_s; ++i) {
                if (sx.at(i).is_zero()) continue;
                for (int j = 0; j <= order_t; ++j)
                    out.set(i, j, out.at(i, j) + t.c.scaled(sx.at(i).scalar() * sy.at(j).scalar()));
            }
        }
    }
    return MeasureSeries{std::move(out), Provenance::from_diracs, d.label()};
}

MeasureSeries measure_from_series(Series f, Provenance prov, std::string label) {
    return MeasureSeries{std::move(f), prov, std::move(label)};
}

RingElement moment(const MeasureSeries& m, int k, int l) {
    if (m.arity() == 1) {
        if (l != 0) throw domain_error("moment: y-order on a one-variable measure");
        return moment_extract_scalar(m.series, k);
    }
    Series sk = moment_extract(m.series, Var::T, l);
    return moment_extract_scalar(sk, k);
}

MeasureSeries restrict_units(const MeasureSeries& m) {
    const Series& f = m.series;
    Series unit_free = substitute_p(psi(f), Var::S, f.order(Var::S));
    return MeasureSeries{f - unit_free, Provenance::restricted, m.label};
}

MeasureSeries stabilize(const MeasureSeries& m) {
    const Series& f = m.series;
    Series twisted = substitute_p(f.frobenius_coefficients(), Var::S, f.order(Var::S));
    return MeasureSeries{f - twisted, Provenance::stabilized, m.label};
}

bool is_unit_supported(const MeasureSeries& m) { return psi(m.series).is_zero(); }

MeasureSeries divide_by_x(const MeasureSeries& m, int times) {
    if (m.arity() != 1) throw domain_error("divide_by_x: one-variable measure required");
    if (times < 0) throw domain_error("divide_by_x: times must be >= 0");
    if (!is_unit_supported(m)) throw domain_error("divide_by_x: measure is not unit-supported");
    if (times == 0) return m;
    const RingSpec& ring = m.ring();
    int mw = std::max(m.series.min_eff(), 1);
    // x^(-1) = x^(phi(p^mw) - 1) on units, realized through the derivation.
    unsigned __int128 euler =
        static_cast<unsigned __int128>(pow_u64(ring.p, mw - 1)) * (ring.p - 1);
    unsigned __int128 e = static_cast<unsigned __int128>(times) * (euler - 1);
    return MeasureSeries{inv_derive_power(m.series, e), m.provenance, m.label};
}

Series antiderive_trace_zero(const Series& f) {
    if (f.arity() != 1) throw domain_error("antiderive: one-variable series required");
    const RingSpec& ring = f.ring();
    int V = f.valid(Var::S);
    if (V < 0) throw precision_error("antiderive: order exhausted");
    Series F = Series::zero(ring, 1, f.order(Var::S));
    RingElement prev = RingElement::zero(ring);
    for (int m = 0; m < V; ++m) {
        // (m+1) F_{m+1} + m F_m = f_m
        RingElement num = f.at(m) - prev.mul_int(m);
        prev = num.div_exact_int(m + 1);
        F.set(m + 1, prev);
    }
    F.set_valid(Var::S, V);
    if (F.min_eff() < 1)
        throw guard_error("antiderive: guard precision exhausted by the m+1 divisions");
    // Pin the free constant with psi(F) = 0.
    RingElement c = psi(F).constant_term();
    F.set(0, -c);
    return F;
}

MeasureSeries divide_by_x_ode(const MeasureSeries& m, int times) {
    if (m.arity() != 1) throw domain_error("divide_by_x_ode: one-variable measure required");
    if (!is_unit_supported(m)) throw domain_error("divide_by_x_ode: measure is not unit-supported");
    Series f = m.series;
    for (int t = 0; t < times; ++t) f = antiderive_trace_zero(f);
    return MeasureSeries{std::move(f), m.provenance, m.label};
}

namespace {

int ceil_log_p(std::uint32_t p, long long n) {
    int j = 0;
    long long v = 1;
    while (v < n) {
        v *= p;
        ++j;
    }
    return j;
}

} // namespace

MeasureSeries eisenstein_like(const DiracCombination& seed, int order_s, int order_t) {
    if (!seed.all_x_units()) throw domain_error("eisenstein_like: seed x-point is not a unit");
    const RingSpec& ring = seed.ring();
    MeasureSeries base = amice_transform(seed, order_s, order_t);
    if (seed.empty()) return MeasureSeries{base.series, Provenance::synthetic, seed.label()};

    // sum_j sigma^j(theta)([p]^(o j)(S), T); the term at level j is
    // divisible by p^(j - log_p order) in every positive S-degree, so the
    // sum settles after M + ceil(log_p(order+1)) steps whenever it settles
    // at all (seeds with zero y-marginal).
    int jmax = ring.capacity + ceil_log_p(ring.p, order_s + 1) + 1;
    Series total = base.series;
    Series term = base.series;
    for (int j = 1; j <= jmax; ++j) {
        term = substitute_p(term.frobenius_coefficients(), Var::S, order_s);
        if (term.is_zero()) break;
        total = total + term;
    }
    return MeasureSeries{std::move(total), Provenance::synthetic, seed.label()};
}

CyclotomicElement::CyclotomicElement(std::uint32_t p, int capacity) : p_(p), cap_(capacity) {
    c_.assign(p - 1, PadicScalar::zero(p, capacity));
}

bool CyclotomicElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const PadicScalar& s) { return s.is_zero(); });
}

int CyclotomicElement::min_eff() const {
    int e = cap_;
    for (const auto& s : c_) e = std::min(e, s.eff());
    return e;
}

CyclotomicElement CyclotomicElement::operator+(const CyclotomicElement& o) const {
    CyclotomicElement r(p_, cap_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

CyclotomicElement CyclotomicElement::operator*(const CyclotomicElement& o) const {
    // Convolve, then eliminate degrees >= p-1 with
    // z^(p-1) = -(1 + z + ... + z^(p-2)).
    int n = static_cast<int>(p_) - 1;
    std::vector<PadicScalar> w(static_cast<std::size_t>(2 * n - 1), PadicScalar::zero(p_, cap_));
    for (int a = 0; a < n; ++a) {
        if (c_[static_cast<std::size_t>(a)].is_zero()) continue;
        for (int b = 0; b < n; ++b)
            w[static_cast<std::size_t>(a + b)] += c_[static_cast<std::size_t>(a)] * o.c_[static_cast<std::size_t>(b)];
    }
    for (int d = 2 * n - 2; d >= n; --d) {
        PadicScalar top = w[static_cast<std::size_t>(d)];
        if (top.is_zero()) continue;
        w[static_cast<std::size_t>(d)] = PadicScalar::zero(p_, cap_);
        for (int k = 0; k < n; ++k) w[static_cast<std::size_t>(d - n + k)] -= top;
    }
    CyclotomicElement r(p_, cap_);
    for (int i = 0; i < n; ++i) r.c_[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)];
    return r;
}

CyclotomicElement CyclotomicElement::scaled(const PadicScalar& s) const {
    CyclotomicElement r(p_, cap_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * s;
    return r;
}

std::string CyclotomicElement::str() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ',';
        s += c_[i].str();
    }
    return s;
}

CyclotomicElement CyclotomicElement::from_scalar(std::uint32_t p, int capacity,
                                                 const PadicScalar& s) {
    CyclotomicElement r(p, capacity);
    r.c_[0] = s.with_capacity(capacity);
    return r;
}

CyclotomicElement CyclotomicElement::zeta_power(std::uint32_t p, int capacity, int t) {
    int n = static_cast<int>(p) - 1;
    int d = ((t % static_cast<int>(p)) + static_cast<int>(p)) % static_cast<int>(p);
    CyclotomicElement r(p, capacity);
    if (d < n) {
        r.c_[static_cast<std::size_t>(d)] = PadicScalar::one(p, capacity);
    } else {
        for (int k = 0; k < n; ++k) r.c_[static_cast<std::size_t>(k)] = -PadicScalar::one(p, capacity);
    }
    return r;
}

CyclotomicElement cyclotomic_trace(const Series& f, const PadicScalar& s0) {
    if (f.arity() != 1) throw domain_error("cyclotomic_trace: one-variable series required");
    if (f.ring().tag != RingTag::plain)
        throw domain_error("cyclotomic_trace: plain coefficient ring required");
    std::uint32_t p = f.ring().p;
    int cap = f.ring().capacity;
    PValuation v0 = s0.valuation();
    if (!v0.lower_bound && v0.v < 1)
        throw domain_error("cyclotomic_trace: point must have valuation >= 1");
    int V = f.valid(Var::S);
    if (V < cap * (static_cast<int>(p) - 1))
        throw domain_error("cyclotomic_trace: valid order " + std::to_string(V) +
                           " below M(p-1) = " + std::to_string(cap * (static_cast<int>(p) - 1)));

    PadicScalar one_plus = PadicScalar::one(p, cap) + s0.with_capacity(cap);
    CyclotomicElement total(p, cap);
    for (int t = 0; t < static_cast<int>(p); ++t) {
        CyclotomicElement u = CyclotomicElement::zeta_power(p, cap, t).scaled(one_plus);
        CyclotomicElement minus_one =
            CyclotomicElement::from_scalar(p, cap, -PadicScalar::one(p, cap));
        u = u + minus_one;
        // Horner over the valid coefficients.
        CyclotomicElement acc = CyclotomicElement::from_scalar(p, cap, f.at(V).scalar());
        for (int m = V - 1; m >= 0; --m)
            acc = acc * u + CyclotomicElement::from_scalar(p, cap, f.at(m).scalar());
        total = total + acc;
    }
    return total;
}

} // namespace amice
