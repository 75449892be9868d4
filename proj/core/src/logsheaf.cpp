#include "amice/logsheaf.hpp"

#include <algorithm>

namespace amice {

LogSection::LogSection(RingSpec ring, int level, int order_s, bool one_form)
    : ring_(ring), level_(level), order_s_(order_s), one_form_(one_form) {
    if (level < 0) throw domain_error("section level must be >= 0");
    std::size_t n = MomentGrid::tri_size(level);
    c_.assign(n, Series::zero(ring, 1, order_s));
    poff_.assign(n, 0);
}

std::size_t LogSection::idx(int k, int l) const {
    if (k < 0 || l < 0 || k + l > level_) throw domain_error("section index out of range");
    std::size_t off = static_cast<std::size_t>(k) * static_cast<std::size_t>(level_ + 1) -
                      static_cast<std::size_t>(k) * static_cast<std::size_t>(k - 1) / 2;
    return off + static_cast<std::size_t>(l);
}

const Series& LogSection::at(int k, int l) const { return c_[idx(k, l)]; }

int LogSection::offset(int k, int l) const { return poff_[idx(k, l)]; }

void LogSection::set(int k, int l, Series s, int poff) {
    std::size_t i = idx(k, l);
    c_[i] = std::move(s);
    poff_[i] = poff;
}

bool LogSection::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Series& s) { return s.is_zero(); });
}

namespace {

void check_same_shape(const LogSection& a, const LogSection& b) {
    if (!(a.ring() == b.ring()) || a.level() != b.level() || a.order_s() != b.order_s() ||
        a.one_form() != b.one_form())
        throw domain_error("section shape mismatch");
}

// Align two offset/series pairs on a common offset and combine.
Series align_combine(const Series& a, int oa, const Series& b, int ob, int& out_off, bool subtract) {
    out_off = std::min(oa, ob);
    auto lift = [&](const Series& s, int o) {
        if (o == out_off) return s;
        Series r = s;
        for (int i = 0; i <= s.order(Var::S); ++i)
            r.set(i, r.at(i).mul_pow_p(o - out_off));
        return r;
    };
    Series la = lift(a, oa), lb = lift(b, ob);
    return subtract ? la - lb : la + lb;
}

} // namespace

LogSection LogSection::operator+(const LogSection& o) const {
    check_same_shape(*this, o);
    LogSection r(ring_, level_, order_s_, one_form_);
    for (int k = 0; k <= level_; ++k)
        for (int l = 0; k + l <= level_; ++l) {
            int off = 0;
            Series s = align_combine(at(k, l), offset(k, l), o.at(k, l), o.offset(k, l), off, false);
            r.set(k, l, std::move(s), off);
        }
    return r;
}

LogSection LogSection::operator-(const LogSection& o) const { return *this + (-o); }

LogSection LogSection::operator-() const {
    LogSection r = *this;
    for (int k = 0; k <= level_; ++k)
        for (int l = 0; k + l <= level_; ++l) r.set(k, l, -at(k, l), offset(k, l));
    return r;
}

LogSection LogSection::scaled(const RingElement& c) const {
    LogSection r = *this;
    for (int k = 0; k <= level_; ++k)
        for (int l = 0; k + l <= level_; ++l) r.set(k, l, at(k, l).scaled(c), offset(k, l));
    return r;
}

LogSection LogSection::mul_int(long long n) const {
    LogSection r = *this;
    for (int k = 0; k <= level_; ++k)
        for (int l = 0; k + l <= level_; ++l) r.set(k, l, at(k, l).mul_int(n), offset(k, l));
    return r;
}

LogSection LogSection::normalized() const {
    LogSection r = *this;
    for (int k = 0; k <= level_; ++k)
        for (int l = 0; k + l <= level_; ++l) {
            int off = offset(k, l);
            if (off <= 0) continue;
            Series s = at(k, l);
            Series lifted = s;
            for (int i = 0; i <= s.order(Var::S); ++i)
                lifted.set(i, s.at(i).mul_pow_p(off));
            r.set(k, l, std::move(lifted), 0);
        }
    return r;
}

LogSection basis_section(RingSpec ring, int order_s, int level, int k, int l) {
    LogSection sec(ring, level, order_s);
    Series one = Series::zero(ring, 1, order_s);
    one.set(0, RingElement::one(ring));
    sec.set(k, l, std::move(one));
    return sec;
}

LogSection connection(const LogSection& sec, ClipPolicy policy) {
    if (sec.one_form()) throw domain_error("connection: input is already a 1-form");
    int n = sec.level();
    LogSection out(sec.ring(), n, sec.order_s(), true);
    for (int k = 0; k <= n; ++k)
        for (int l = 0; k + l <= n; ++l) {
            Series d = inv_derive(sec.at(k, l), Var::S);
            int od = sec.offset(k, l);
            if (l >= 1) {
                int off = 0;
                Series s = align_combine(d, od, sec.at(k, l - 1).mul_int(l),
                                         sec.offset(k, l - 1), off, false);
                out.set(k, l, std::move(s), off);
            } else {
                out.set(k, l, std::move(d), od);
            }
        }
    if (policy == ClipPolicy::strict) {
        for (int k = 0; k <= n; ++k) {
            int l = n - k;
            if (!sec.at(k, l).is_zero())
                throw clip_error("connection: nonzero coefficient at w^[" + std::to_string(k) +
                                 "," + std::to_string(l) + "] pushed past level " +
                                 std::to_string(n));
        }
    }
    return out;
}

LogSection frobenius_section(const LogSection& sec) {
    LogSection out(sec.ring(), sec.level(), sec.order_s(), sec.one_form());
    for (int k = 0; k <= sec.level(); ++k)
        for (int l = 0; k + l <= sec.level(); ++l) {
            Series g = substitute_p(sec.at(k, l).frobenius_coefficients(), Var::S,
                                    sec.order_s());
            // divide by p^l, diverting what the coefficients cannot absorb
            // into the cell offset
            PValuation v = g.valuation();
            int extract = std::min(l, v.v);
            if (extract > 0) {
                for (int i = 0; i <= g.order(Var::S); ++i)
                    g.set(i, g.at(i).div_pow_p(extract));
            }
            if (!g.is_zero() && g.min_eff() < 1)
                throw precision_error("frobenius_section: effective precision exhausted by p^-" +
                                      std::to_string(l));
            out.set(k, l, std::move(g), sec.offset(k, l) - (l - extract));
        }
    return out;
}

LogSection frobenius_inverse_basis(RingSpec ring, int order_s, int level, int k, int l) {
    LogSection sec = basis_section(ring, order_s, level, k, l);
    Series s = sec.at(k, l);
    for (int i = 0; i <= order_s; ++i) s.set(i, s.at(i).mul_pow_p(l));
    sec.set(k, l, std::move(s));
    return sec;
}

LogSection rhs_one_minus_phi(const MeasureSeries& theta, int level, RestrictionMode mode) {
    if (theta.arity() != 2) throw domain_error("rhs_one_minus_phi: two-variable measure required");
    MeasureSeries restricted = apply_restriction(theta, mode);
    LogSection out(theta.ring(), level, theta.series.order(Var::S), true);
    for (int k = 0; k <= level; ++k)
        out.set(k, 0, moment_extract(restricted.series, Var::T, k));
    return out;
}

LogSection rho_section(const MeasureSeries& theta, int level, RestrictionMode mode, int workers) {
    MomentGrid grid = moment_grid_closed(theta, level, mode, workers);
    LogSection out(theta.ring(), level, grid.order_s(), false);
    for (int k = 0; k <= level; ++k)
        for (int l = 0; k + l <= level; ++l) out.set(k, l, grid.at(k, l));
    return out;
}

LogSection transition(const LogSection& sec) {
    if (sec.level() < 1) throw domain_error("transition: level is already 0");
    LogSection out(sec.ring(), sec.level() - 1, sec.order_s(), sec.one_form());
    for (int k = 0; k < sec.level(); ++k)
        for (int l = 0; k + l < sec.level(); ++l) out.set(k, l, sec.at(k, l), sec.offset(k, l));
    return out;
}

LogSection dp_multiply(const LogSection& a, const LogSection& b, int max_level) {
    if (a.one_form() && b.one_form())
        throw domain_error("dp_multiply: no wedge products past form degree 1");
    int n = a.level() + b.level();
    if (n > max_level)
        throw domain_error("dp_multiply: level " + std::to_string(n) + " exceeds the bound " +
                           std::to_string(max_level));
    LogSection out(a.ring(), n, std::min(a.order_s(), b.order_s()),
                   a.one_form() || b.one_form());
    for (int k = 0; k <= n; ++k)
        for (int l = 0; k + l <= n; ++l) {
            bool have = false;
            Series acc = Series::zero(out.ring(), 1, out.order_s());
            int acc_off = 0;
            for (int k1 = std::max(0, k - b.level()); k1 <= std::min(k, a.level()); ++k1)
                for (int l1 = std::max(0, l - b.level()); l1 <= std::min(l, a.level() - k1); ++l1) {
                    int k2 = k - k1, l2 = l - l1;
                    if (k2 + l2 > b.level()) continue;
                    const Series& sa = a.at(k1, l1);
                    const Series& sb = b.at(k2, l2);
                    if (sa.is_zero() || sb.is_zero()) continue;
                    // w^[k1,l1] w^[k2,l2] = C(k,k1) C(l,l1) w^[k,l]
                    auto cw = static_cast<long long>(binom_u64(static_cast<unsigned>(k),
                                                               static_cast<unsigned>(k1)));
                    auto cl = static_cast<long long>(binom_u64(static_cast<unsigned>(l),
                                                               static_cast<unsigned>(l1)));
                    Series term = (sa.truncated(out.order_s()) * sb.truncated(out.order_s()))
                                      .mul_int(cw)
                                      .mul_int(cl);
                    int term_off = a.offset(k1, l1) + b.offset(k2, l2);
                    if (!have) {
                        acc = std::move(term);
                        acc_off = term_off;
                        have = true;
                    } else {
                        int off = 0;
                        acc = align_combine(acc, acc_off, term, term_off, off, false);
                        acc_off = off;
                    }
                }
            if (have) out.set(k, l, std::move(acc), acc_off);
        }
    return out;
}

VerifyReport compare_sections(const LogSection& lhs, const LogSection& rhs) {
    check_same_shape(lhs, rhs);
    VerifyReport rep;
    rep.level = lhs.level();
    rep.pass = true;
    for (int k = 0; k <= lhs.level(); ++k)
        for (int l = 0; k + l <= lhs.level(); ++l) {
            int off = 0;
            Series diff = align_combine(lhs.at(k, l), lhs.offset(k, l), rhs.at(k, l),
                                        rhs.offset(k, l), off, true);
            Series zero = Series::zero(diff.ring(), 1, diff.order(Var::S));
            zero.set_valid(Var::S, diff.valid(Var::S));
            SeriesDiff d = series_discrepancy(diff, zero);
            VerifyCell cell{k, l, d.valuation, d.lower_bound, d.eff, d.zero_at_eff};
            rep.cells.push_back(cell);
            if (!d.zero_at_eff) rep.pass = false;
        }
    return rep;
}

VerifyReport verify_polylog(const MeasureSeries& theta, int level, RestrictionMode mode,
                            int workers) {
    LogSection lhs = connection(rho_section(theta, level, mode, workers));
    LogSection rhs = rhs_one_minus_phi(theta, level, mode);
    return compare_sections(lhs, rhs);
}

} // namespace amice
