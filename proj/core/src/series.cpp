#include "amice/series.hpp"

#include <algorithm>

namespace amice {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

} // namespace

Series Series::zero(RingSpec ring, int arity, int order_s, int order_t) {
    if (arity != 1 && arity != 2) throw domain_error("series arity must be 1 or 2");
    if (order_s < 0 || (arity == 2 && order_t < 0))
        throw domain_error("series truncation order must be >= 0");
    Series s;
    s.ring_ = ring;
    s.arity_ = arity;
    s.ns_ = order_s;
    s.nt_ = arity == 2 ? order_t : 0;
    s.valid_s_ = s.ns_;
    s.valid_t_ = s.nt_;
    s.c_.assign(static_cast<std::size_t>(s.ns_ + 1) * static_cast<std::size_t>(s.nt_ + 1),
                RingElement::zero(ring));
    return s;
}

Series Series::constant(RingSpec ring, int arity, int order_s, int order_t,
                        const RingElement& c) {
    Series s = zero(ring, arity, order_s, order_t);
    s.c_[0] = c;
    return s;
}

void Series::set_valid(Var v, int k) {
    if (v == Var::S)
        valid_s_ = std::min(k, ns_);
    else
        valid_t_ = std::min(k, nt_);
    clear_past_valid();
}

const RingElement& Series::at(int i) const {
    if (arity_ != 1) throw domain_error("one-index access on a two-variable series");
    if (i < 0 || i > ns_) throw domain_error("series index out of range");
    return c_[idx(i, 0)];
}

const RingElement& Series::at(int i, int j) const {
    if (arity_ != 2) throw domain_error("two-index access on a one-variable series");
    if (i < 0 || i > ns_ || j < 0 || j > nt_) throw domain_error("series index out of range");
    return c_[idx(i, j)];
}

void Series::set(int i, const RingElement& c) {
    if (arity_ != 1) throw domain_error("one-index access on a two-variable series");
    if (i < 0 || i > ns_) throw domain_error("series index out of range");
    c_[idx(i, 0)] = c;
}

void Series::set(int i, int j, const RingElement& c) {
    if (arity_ != 2) throw domain_error("two-index access on a one-variable series");
    if (i < 0 || i > ns_ || j < 0 || j > nt_) throw domain_error("series index out of range");
    c_[idx(i, j)] = c;
}

bool Series::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const RingElement& e) { return e.is_zero(); });
}

int Series::min_eff() const {
    int e = ring_.capacity;
    for (int i = 0; i <= valid_s_; ++i)
        for (int j = 0; j <= valid_t_; ++j) e = std::min(e, c_[idx(i, j)].min_eff());
    return e;
}

PValuation Series::valuation() const {
    PValuation best{min_eff(), true};
    for (int i = 0; i <= valid_s_; ++i)
        for (int j = 0; j <= valid_t_; ++j) {
            PValuation v = c_[idx(i, j)].valuation();
            if (!v.lower_bound && (best.lower_bound || v.v < best.v)) best = v;
        }
    return best;
}

void Series::clear_past_valid() {
    for (int i = 0; i <= ns_; ++i)
        for (int j = 0; j <= nt_; ++j)
            if (i > valid_s_ || j > valid_t_) c_[idx(i, j)] = RingElement::zero(ring_);
}

namespace {

void check_same_shape(const Series& a, const Series& b) {
    if (!(a.ring() == b.ring()) || a.arity() != b.arity() ||
        a.order(Var::S) != b.order(Var::S) || a.order(Var::T) != b.order(Var::T))
        throw domain_error("series shape mismatch");
}

} // namespace

Series Series::operator+(const Series& o) const {
    check_same_shape(*this, o);
    Series r = *this;
    for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] + o.c_[k];
    r.valid_s_ = std::min(valid_s_, o.valid_s_);
    r.valid_t_ = std::min(valid_t_, o.valid_t_);
    r.clear_past_valid();
    return r;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator-() const {
    Series r = *this;
    for (auto& e : r.c_) e = -e;
    return r;
}

Series Series::operator*(const Series& o) const {
    check_same_shape(*this, o);
    Series r = zero(ring_, arity_, ns_, nt_);
    for (int i = 0; i <= ns_; ++i)
        for (int j = 0; j <= nt_; ++j) {
            const RingElement& a = c_[idx(i, j)];
            if (a.is_zero()) continue;
            for (int u = 0; i + u <= ns_; ++u)
                for (int v = 0; j + v <= nt_; ++v) {
                    const RingElement& b = o.c_[idx(u, v)];
                    if (b.is_zero()) continue;
                    r.c_[r.idx(i + u, j + v)] += a * b;
                }
        }
    r.valid_s_ = std::min(valid_s_, o.valid_s_);
    r.valid_t_ = std::min(valid_t_, o.valid_t_);
    r.clear_past_valid();
    return r;
}

Series Series::scaled(const RingElement& c) const {
    Series r = *this;
    for (auto& e : r.c_) e = e * c;
    return r;
}

Series Series::scaled(const PadicScalar& c) const {
    Series r = *this;
    for (auto& e : r.c_) e = e.scaled(c);
    return r;
}

Series Series::mul_int(long long n) const {
    Series r = *this;
    for (auto& e : r.c_) e = e.mul_int(n);
    return r;
}

Series Series::div_exact_int(long long n) const {
    Series r = *this;
    for (auto& e : r.c_) e = e.div_exact_int(n);
    return r;
}

Series Series::frobenius_coefficients() const {
    Series r = *this;
    for (auto& e : r.c_) e = e.frobenius();
    return r;
}

Series Series::reduced(int new_eff) const {
    Series r = *this;
    for (auto& e : r.c_) e = e.reduced(new_eff);
    return r;
}

Series Series::with_capacity(int new_cap) const {
    Series r = *this;
    r.ring_ = ring_.with_capacity(new_cap);
    for (auto& e : r.c_) e = e.with_capacity(new_cap);
    return r;
}

bool Series::congruent(const Series& o) const {
    check_same_shape(*this, o);
    int vs = std::min(valid_s_, o.valid_s_);
    int vt = std::min(valid_t_, o.valid_t_);
    for (int i = 0; i <= vs; ++i)
        for (int j = 0; j <= vt; ++j)
            if (!c_[idx(i, j)].congruent(o.c_[idx(i, j)])) return false;
    return true;
}

Series Series::eval_t_zero() const {
    if (arity_ != 2) throw domain_error("eval_t_zero needs a two-variable series");
    if (valid_t_ < 0) throw precision_error("eval_t_zero: T order exhausted");
    Series r = zero(ring_, 1, ns_);
    for (int i = 0; i <= ns_; ++i) r.c_[r.idx(i, 0)] = c_[idx(i, 0)];
    r.valid_s_ = valid_s_;
    r.clear_past_valid();
    return r;
}

RingElement Series::constant_term() const {
    if (arity_ != 1) throw domain_error("constant_term needs a one-variable series");
    if (valid_s_ < 0) throw precision_error("constant_term: order exhausted");
    return c_[0];
}

Series Series::truncated(int order_s, int order_t) const {
    order_s = std::min(order_s, ns_);
    order_t = arity_ == 2 ? std::min(order_t, nt_) : 0;
    Series r = zero(ring_, arity_, order_s, order_t);
    for (int i = 0; i <= order_s; ++i)
        for (int j = 0; j <= (arity_ == 2 ? order_t : 0); ++j) r.c_[r.idx(i, j)] = c_[idx(i, j)];
    r.valid_s_ = std::min(valid_s_, order_s);
    r.valid_t_ = arity_ == 2 ? std::min(valid_t_, order_t) : 0;
    r.clear_past_valid();
    return r;
}

std::uint64_t binom_u64(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 c = 1;
    for (unsigned i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
        if (c > ~std::uint64_t{0}) throw domain_error("binom_u64 overflow");
    }
    return static_cast<std::uint64_t>(c);
}

Series p_series(RingSpec ring, int order) {
    Series f = Series::zero(ring, 1, order);
    for (int e = 1; e <= order && e <= static_cast<int>(ring.p); ++e)
        f.set(e, RingElement::from_int(ring, static_cast<long long>(binom_u64(ring.p, e))));
    return f;
}

Series inv_derive(const Series& f, Var var) {
    if (var == Var::T && f.arity() != 2)
        throw domain_error("inv_derive in T needs a two-variable series");
    Series r = f;
    int n = f.order(var);
    auto get = [&](int k, int other) -> const RingElement& {
        return var == Var::S ? f.c_[f.idx(k, other)] : f.c_[f.idx(other, k)];
    };
    auto put = [&](int k, int other, RingElement e) {
        if (var == Var::S)
            r.c_[r.idx(k, other)] = std::move(e);
        else
            r.c_[r.idx(other, k)] = std::move(e);
    };
    int nother = var == Var::S ? (f.arity() == 2 ? f.order(Var::T) : 0) : f.order(Var::S);
    for (int other = 0; other <= nother; ++other)
        for (int m = 0; m <= n; ++m) {
            // (1+v) f' at degree m: (m+1) f_{m+1} + m f_m.
            RingElement e = get(m, other).mul_int(m);
            if (m + 1 <= n) e += get(m + 1, other).mul_int(m + 1);
            put(m, other, std::move(e));
        }
    if (var == Var::S)
        r.valid_s_ = f.valid_s_ - 1;
    else
        r.valid_t_ = f.valid_t_ - 1;
    if (r.valid_s_ < -1 || r.valid_t_ < -1)
        throw precision_error("inv_derive: no valid orders left");
    r.clear_past_valid();
    return r;
}

Series substitute_p(const Series& f, Var var, int out_order) {
    if (var == Var::T && f.arity() != 2)
        throw domain_error("substitute_p in T needs a two-variable series");
    const RingSpec& ring = f.ring();
    int n_in = f.order(var);
    if (out_order < 0) out_order = n_in;

    // Powers of [p](var) truncated at out_order; power i has valuation i.
    Series pp = p_series(ring, out_order);
    std::vector<std::vector<PadicScalar>> pw;
    pw.reserve(static_cast<std::size_t>(out_order) + 1);
    std::vector<PadicScalar> cur(static_cast<std::size_t>(out_order) + 1,
                                 PadicScalar::zero(ring.p, ring.capacity));
    cur[0] = PadicScalar::one(ring.p, ring.capacity);
    pw.push_back(cur);
    for (int i = 1; i <= out_order; ++i) {
        std::vector<PadicScalar> nxt(static_cast<std::size_t>(out_order) + 1,
                                     PadicScalar::zero(ring.p, ring.capacity));
        for (int a = 0; a < static_cast<int>(cur.size()); ++a) {
            if (cur[a].is_zero()) continue;
            for (int b = 1; a + b <= out_order && b <= static_cast<int>(ring.p); ++b)
                nxt[a + b] += cur[a] * pp.at(b).scalar();
        }
        cur = std::move(nxt);
        pw.push_back(cur);
    }

    int nother = var == Var::S ? (f.arity() == 2 ? f.order(Var::T) : 0) : f.order(Var::S);
    Series r = var == Var::S
                   ? Series::zero(ring, f.arity(), out_order, f.arity() == 2 ? f.order(Var::T) : 0)
                   : Series::zero(ring, 2, f.order(Var::S), out_order);
    for (int i = 0; i <= std::min(n_in, out_order); ++i)
        for (int other = 0; other <= nother; ++other) {
            const RingElement& a =
                var == Var::S ? f.c_[f.idx(i, other)] : f.c_[f.idx(other, i)];
            if (a.is_zero()) continue;
            for (int u = i; u <= out_order; ++u) {
                if (pw[i][u].is_zero()) continue;
                RingElement add = a.scaled(pw[i][u]);
                if (var == Var::S)
                    r.c_[r.idx(u, other)] += add;
                else
                    r.c_[r.idx(other, u)] += add;
            }
        }
    bool complete = f.valid(var) == n_in;
    int vout = complete ? out_order : std::min(f.valid(var), out_order);
    if (var == Var::S) {
        r.valid_s_ = vout;
        r.valid_t_ = f.arity() == 2 ? f.valid(Var::T) : 0;
    } else {
        r.valid_t_ = vout;
        r.valid_s_ = f.valid(Var::S);
    }
    r.clear_past_valid();
    return r;
}

namespace {

// Coefficient tables of (1+S)^i [p](S)^j for p*j + i <= V, indexed by the
// resolving degree m = p*j + i. Entry m has support [j, m] and a unit leading
// coefficient at m, which is what makes the extraction triangular mod p.
std::vector<std::vector<PadicScalar>> psi_basis(const RingSpec& ring, int V) {
    std::uint32_t p = ring.p;
    Series ps = p_series(RingSpec::plain(p, ring.capacity), V);
    std::vector<std::vector<PadicScalar>> basis(static_cast<std::size_t>(V) + 1);
    std::vector<PadicScalar> pj(1, PadicScalar::one(p, ring.capacity)); // [p]^j
    for (int j = 0; p * static_cast<std::uint32_t>(j) <= static_cast<std::uint32_t>(V); ++j) {
        std::vector<PadicScalar> cur = pj;
        for (int i = 0; static_cast<std::uint32_t>(i) < p; ++i) {
            int m = static_cast<int>(p) * j + i;
            if (m > V) break;
            basis[static_cast<std::size_t>(m)] = cur;
            // multiply by (1+S) for the next i
            std::vector<PadicScalar> nxt(std::min<std::size_t>(cur.size() + 1,
                                                               static_cast<std::size_t>(V) + 1),
                                         PadicScalar::zero(p, ring.capacity));
            for (std::size_t u = 0; u < cur.size(); ++u) {
                nxt[u] += cur[u];
                if (u + 1 < nxt.size()) nxt[u + 1] += cur[u];
            }
            cur = std::move(nxt);
        }
        // advance [p]^j -> [p]^(j+1)
        std::vector<PadicScalar> nxt(std::min<std::size_t>(pj.size() + p,
                                                           static_cast<std::size_t>(V) + 1),
                                     PadicScalar::zero(p, ring.capacity));
        for (std::size_t a = 0; a < pj.size(); ++a) {
            if (pj[a].is_zero()) continue;
            for (std::size_t b = 1; b <= p && a + b < nxt.size(); ++b)
                nxt[a + b] += pj[a] * ps.at(static_cast<int>(b)).scalar();
        }
        pj = std::move(nxt);
    }
    return basis;
}

// Exact solve of f = sum_(p*j+i <= V) (1+S)^i g_(i,j) [p](S)^j for one
// S-column of ring elements, by digit extraction mod p and Hensel lifting.
std::vector<std::vector<RingElement>> psi_solve(const RingSpec& ring,
                                                std::vector<RingElement> r, int V,
                                                const std::vector<std::vector<PadicScalar>>& basis) {
    std::uint32_t p = ring.p;
    int Vq = V / static_cast<int>(p);
    int Mw = ring.capacity;
    for (const auto& e : r) Mw = std::min(Mw, e.min_eff());

    std::vector<std::vector<RingElement>> g(
        p, std::vector<RingElement>(static_cast<std::size_t>(Vq) + 1, RingElement::zero(ring)));

    auto digit_mod_p = [&](const RingElement& e) {
        RingElement d(ring);
        for (int w = 0; w < e.width(); ++w)
            d.qc(w) = PadicScalar::from_residue(p, ring.capacity, e.qc(w).residue() % p,
                                                ring.capacity);
        return d;
    };

    for (int t = 0; t < Mw; ++t) {
        for (int m = V; m >= 0; --m) {
            int i = m % static_cast<int>(p);
            int j = m / static_cast<int>(p);
            RingElement d = digit_mod_p(r[static_cast<std::size_t>(m)]);
            if (d.is_zero()) continue;
            g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += d.mul_pow_p(t);
            const auto& col = basis[static_cast<std::size_t>(m)];
            for (std::size_t u = 0; u < col.size(); ++u) {
                if (col[u].is_zero()) continue;
                r[u] -= d.scaled(col[u]);
            }
        }
        for (auto& e : r) e = e.div_pow_p(1);
    }
    for (auto& row : g)
        for (auto& e : row) e = e.reduced(Mw);
    return g;
}

} // namespace

Series psi(const Series& f) {
    const RingSpec& ring = f.ring();
    int V = f.valid(Var::S);
    if (V < 0) throw precision_error("psi: S order exhausted");
    int Vq = V / static_cast<int>(ring.p);
    auto basis = psi_basis(ring, V);

    if (f.arity() == 1) {
        std::vector<RingElement> col;
        col.reserve(static_cast<std::size_t>(V) + 1);
        for (int i = 0; i <= V; ++i) col.push_back(f.at(i));
        auto g = psi_solve(ring, std::move(col), V, basis);
        Series out = Series::zero(ring, 1, Vq);
        for (int j = 0; j <= Vq; ++j) out.set(j, g[0][static_cast<std::size_t>(j)]);
        return out;
    }

    int nt = f.order(Var::T);
    Series out = Series::zero(ring, 2, Vq, nt);
    for (int tj = 0; tj <= nt; ++tj) {
        std::vector<RingElement> col;
        col.reserve(static_cast<std::size_t>(V) + 1);
        for (int i = 0; i <= V; ++i) col.push_back(f.at(i, tj));
        auto g = psi_solve(ring, std::move(col), V, basis);
        for (int j = 0; j <= Vq; ++j) out.set(j, tj, g[0][static_cast<std::size_t>(j)]);
    }
    out.set_valid(Var::T, f.valid(Var::T));
    return out;
}

std::vector<Series> psi_decompose(const Series& f) {
    if (f.arity() != 1) throw domain_error("psi_decompose needs a one-variable series");
    const RingSpec& ring = f.ring();
    int V = f.valid(Var::S);
    if (V < 0) throw precision_error("psi_decompose: S order exhausted");
    int Vq = V / static_cast<int>(ring.p);
    std::vector<RingElement> col;
    for (int i = 0; i <= V; ++i) col.push_back(f.at(i));
    auto g = psi_solve(ring, std::move(col), V, psi_basis(ring, V));
    std::vector<Series> out;
    for (std::uint32_t i = 0; i < ring.p; ++i) {
        Series gi = Series::zero(ring, 1, Vq);
        for (int j = 0; j <= Vq; ++j) gi.set(j, g[i][static_cast<std::size_t>(j)]);
        out.push_back(std::move(gi));
    }
    return out;
}

Series binomial_exp(const PadicScalar& x, int order, int target_capacity) {
    std::uint32_t p = x.prime();
    int guard = vp_factorial(p, order);
    if (x.eff() < target_capacity + guard)
        throw guard_error("binomial_exp: exponent carries " + std::to_string(x.eff()) +
                          " digits, needs " + std::to_string(target_capacity + guard) +
                          " (target " + std::to_string(target_capacity) + " + v_p(" +
                          std::to_string(order) + "!) = " + std::to_string(guard) + ")");
    RingSpec ring = RingSpec::plain(p, target_capacity);
    Series out = Series::zero(ring, 1, order);
    out.set(0, RingElement::one(ring));
    PadicScalar run = PadicScalar::one(p, x.capacity()).reduced(x.eff());
    for (int m = 1; m <= order; ++m) {
        // C(x,m) = C(x,m-1) (x - m + 1) / m; the p-part of m divides exactly
        // since C(x,m) is integral, costing v_p(m) digits of the guard.
        run = run * (x - PadicScalar::from_int(p, x.capacity(), m - 1));
        long long mm = m;
        int v = 0;
        while (mm % p == 0) {
            mm /= p;
            ++v;
        }
        run = run * PadicScalar::from_int(p, x.capacity(), mm).unit_inverse();
        run = run.div_pow_p(v);
        out.set(m, RingElement::from_scalar(ring, run.with_capacity(target_capacity)));
    }
    return out;
}

Series binomial_exp_int(RingSpec ring, long long x, int order) {
    // (1+S)^x by binary exponentiation of (1+S) or its inverse geometric
    // series; exact mod p^capacity with no guard digits.
    bool neg = x < 0;
    unsigned long long e = neg ? -static_cast<unsigned long long>(x)
                               : static_cast<unsigned long long>(x);
    Series base = Series::zero(ring, 1, order);
    if (neg) {
        for (int m = 0; m <= order; ++m)
            base.set(m, RingElement::from_int(ring, m % 2 == 0 ? 1 : -1));
    } else {
        base.set(0, RingElement::one(ring));
        if (order >= 1) base.set(1, RingElement::one(ring));
    }
    Series acc = Series::zero(ring, 1, order);
    acc.set(0, RingElement::one(ring));
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Series inv_derive_power(const Series& f, unsigned __int128 e) {
    if (f.arity() != 1) throw domain_error("inv_derive_power needs a one-variable series");
    if (e == 0) return f;
    const RingSpec& ring = f.ring();
    int n = f.order(Var::S);
    int Mw = f.min_eff();
    if (Mw < 1) throw precision_error("inv_derive_power: no effective digits");
    std::uint64_t mod = pow_u64(ring.p, Mw);
    std::size_t dim = static_cast<std::size_t>(n) + 1;

    // D[m'][m]: (1+S) d/dS sends S^m to m S^(m-1) + m S^m.
    std::vector<std::uint64_t> mat(dim * dim, 0), acc(dim * dim, 0);
    for (std::size_t m = 0; m < dim; ++m) {
        std::uint64_t mm = static_cast<std::uint64_t>(m) % mod;
        mat[m * dim + m] = mm;
        if (m >= 1) mat[(m - 1) * dim + m] = mm;
        acc[m * dim + m] = 1 % mod;
    }
    auto matmul = [&](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
        std::vector<std::uint64_t> c(dim * dim, 0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t k = 0; k < dim; ++k) {
                std::uint64_t aik = a[i * dim + k];
                if (aik == 0) continue;
                for (std::size_t j = 0; j < dim; ++j) {
                    if (b[k * dim + j] == 0) continue;
                    c[i * dim + j] =
                        (c[i * dim + j] + static_cast<unsigned __int128>(aik) * b[k * dim + j]) % mod;
                }
            }
        return c;
    };
    unsigned __int128 ee = e;
    while (ee > 0) {
        if (ee & 1) acc = matmul(acc, mat);
        mat = matmul(mat, mat);
        ee >>= 1;
    }

    Series src = f;
    src.set_valid(Var::S, f.valid(Var::S)); // zeroes anything past the valid order
    Series out = Series::zero(ring, 1, n);
    for (std::size_t i = 0; i < dim; ++i) {
        RingElement sum = RingElement::zero(ring);
        for (std::size_t m = 0; m < dim; ++m) {
            std::uint64_t w = acc[i * dim + m];
            if (w == 0) continue;
            sum += src.at(static_cast<int>(m))
                       .scaled(PadicScalar::from_residue(ring.p, ring.capacity, w, Mw));
        }
        out.set(static_cast<int>(i), sum);
    }
    out.set_valid(Var::S, f.valid(Var::S));
    return out;
}

Series moment_extract(const Series& f, Var var, int k) {
    if (f.arity() != 2) throw domain_error("moment_extract needs a two-variable series");
    if (k > f.valid(var))
        throw precision_error("moment_extract: order " + std::to_string(k) +
                              " exceeds the valid order");
    Series g = f;
    for (int t = 0; t < k; ++t) g = inv_derive(g, var);
    if (var == Var::T) return g.eval_t_zero();
    // var == S: take the S-constant row as a series in T.
    Series r = Series::zero(f.ring(), 1, f.order(Var::T));
    for (int j = 0; j <= f.order(Var::T); ++j) r.set(j, g.at(0, j));
    r.set_valid(Var::S, g.valid(Var::T));
    return r;
}

RingElement moment_extract_scalar(const Series& f, int k) {
    if (f.arity() != 1) throw domain_error("moment_extract_scalar needs a one-variable series");
    if (k > f.valid(Var::S))
        throw precision_error("moment_extract_scalar: order " + std::to_string(k) +
                              " exceeds the valid order");
    Series g = f;
    for (int t = 0; t < k; ++t) g = inv_derive(g, Var::S);
    return g.constant_term();
}

std::vector<PadicScalar> binomial_row_mod(std::uint32_t p, int capacity, long long n, int order) {
    RingSpec ring = RingSpec::plain(p, capacity);
    Series s = binomial_exp_int(ring, n, order);
    std::vector<PadicScalar> row;
    row.reserve(static_cast<std::size_t>(order) + 1);
    for (int m = 0; m <= order; ++m) row.push_back(s.at(m).scalar());
    return row;
}

SeriesDiff series_discrepancy(const Series& a, const Series& b) {
    Series d = a - b;
    SeriesDiff out;
    out.eff = std::min(a.min_eff(), b.min_eff());
    out.zero_at_eff = d.is_zero();
    PValuation v = d.valuation();
    out.valuation = v.v;
    out.lower_bound = v.lower_bound;
    return out;
}

} // namespace amice
