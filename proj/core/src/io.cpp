#include "amice/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace amice {

namespace {

long long parse_ll(const std::string& tok, const std::string& field) {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw parse_error("field '" + field + "': not an integer: '" + tok + "'");
    return v;
}

// Integer, or a comma-separated list of q-coefficients.
RingElement parse_coeff(const RingSpec& ring, const std::string& tok, const std::string& field) {
    if (tok.find(',') == std::string::npos)
        return RingElement::from_int(ring, parse_ll(tok, field));
    if (ring.tag != RingTag::polyq)
        throw parse_error("field '" + field + "': q-coefficient list in a plain ring");
    RingElement e(ring);
    std::stringstream ss(tok);
    std::string part;
    int deg = 0;
    while (std::getline(ss, part, ',')) {
        if (deg > ring.qbound)
            throw parse_error("field '" + field + "': more q-coefficients than the degree bound");
        e.qc(deg) = PadicScalar::from_int(ring.p, ring.capacity, parse_ll(part, field));
        ++deg;
    }
    return e;
}

std::vector<std::vector<std::string>> tokenize(std::istream& in) {
    std::vector<std::vector<std::string>> lines;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::stringstream ss(line);
        std::vector<std::string> toks;
        std::string t;
        while (ss >> t) toks.push_back(t);
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    return lines;
}

} // namespace

MeasureDescription parse_measure_description(std::istream& in) {
    auto lines = tokenize(in);

    std::optional<long long> prime, precision;
    std::optional<int> order_s, order_t, qbound;
    RingTag tag = RingTag::plain;
    std::string label;
    bool raw_mode = false;
    std::vector<std::vector<std::string>> term_lines, coeff_lines;

    for (const auto& toks : lines) {
        const std::string& key = toks[0];
        if (key == "prime") {
            if (toks.size() != 2) throw parse_error("field 'prime': expected one value");
            prime = parse_ll(toks[1], "prime");
        } else if (key == "precision") {
            if (toks.size() != 2) throw parse_error("field 'precision': expected one value");
            precision = parse_ll(toks[1], "precision");
        } else if (key == "orders") {
            if (toks.size() != 2 && toks.size() != 3)
                throw parse_error("field 'orders': expected one or two values");
            order_s = static_cast<int>(parse_ll(toks[1], "orders"));
            if (toks.size() == 3) order_t = static_cast<int>(parse_ll(toks[2], "orders"));
        } else if (key == "ring") {
            if (toks.size() < 2) throw parse_error("field 'ring': expected 'plain' or 'polyq N'");
            if (toks[1] == "plain") {
                tag = RingTag::plain;
            } else if (toks[1] == "polyq") {
                if (toks.size() != 3) throw parse_error("field 'ring': polyq needs a degree bound");
                tag = RingTag::polyq;
                qbound = static_cast<int>(parse_ll(toks[2], "ring"));
            } else {
                throw parse_error("field 'ring': unknown tag '" + toks[1] + "'");
            }
        } else if (key == "label") {
            label = toks.size() > 1 ? toks[1] : "";
        } else if (key == "dirac") {
            term_lines.push_back(toks);
        } else if (key == "raw") {
            raw_mode = true;
        } else if (key == "coeff") {
            coeff_lines.push_back(toks);
        } else {
            throw parse_error("unknown field '" + key + "'");
        }
    }

    if (!prime) throw parse_error("field 'prime': missing");
    if (!precision) throw parse_error("field 'precision': missing");
    if (!order_s) throw parse_error("field 'orders': missing");
    if (*prime < 2 || *prime > 0x7fffffff || !is_prime_u32(static_cast<std::uint32_t>(*prime)))
        throw parse_error("field 'prime': " + std::to_string(*prime) + " is not a prime");
    if (*precision < 1) throw parse_error("field 'precision': must be >= 1");
    if (*order_s < 0 || (order_t && *order_t < 0))
        throw parse_error("field 'orders': must be >= 0");
    if (raw_mode && !term_lines.empty())
        throw parse_error("field 'dirac': dirac terms and a raw table cannot be mixed");

    MeasureDescription d;
    auto p = static_cast<std::uint32_t>(*prime);
    auto cap = static_cast<int>(*precision);
    d.ring = tag == RingTag::plain ? RingSpec::plain(p, cap) : RingSpec::polyq(p, cap, *qbound);
    d.arity = order_t ? 2 : 1;
    d.order_s = *order_s;
    d.order_t = order_t.value_or(0);
    d.label = label;

    if (raw_mode) {
        Series f = Series::zero(d.ring, d.arity, d.order_s, d.order_t);
        for (const auto& toks : coeff_lines) {
            std::size_t expect = d.arity == 2 ? 4 : 3;
            if (toks.size() != expect)
                throw parse_error("field 'coeff': expected " + std::to_string(expect - 1) +
                                  " values");
            int i = static_cast<int>(parse_ll(toks[1], "coeff"));
            if (d.arity == 2) {
                int j = static_cast<int>(parse_ll(toks[2], "coeff"));
                if (i < 0 || i > d.order_s || j < 0 || j > d.order_t)
                    throw parse_error("field 'coeff': monomial exponent out of range");
                f.set(i, j, parse_coeff(d.ring, toks[3], "coeff"));
            } else {
                if (i < 0 || i > d.order_s)
                    throw parse_error("field 'coeff': monomial exponent out of range");
                f.set(i, parse_coeff(d.ring, toks[2], "coeff"));
            }
        }
        d.raw = std::move(f);
    } else {
        DiracCombination diracs(d.ring, d.arity, d.label);
        for (const auto& toks : term_lines) {
            std::size_t expect = d.arity == 2 ? 4 : 3;
            if (toks.size() != expect)
                throw parse_error("field 'dirac': expected x " +
                                  std::string(d.arity == 2 ? "y " : "") + "coeff");
            long long x = parse_ll(toks[1], "dirac");
            if (d.arity == 2) {
                long long y = parse_ll(toks[2], "dirac");
                diracs.add(DiracPoint::integer(x), DiracPoint::integer(y),
                           parse_coeff(d.ring, toks[3], "dirac"));
            } else {
                diracs.add(DiracPoint::integer(x), parse_coeff(d.ring, toks[2], "dirac"));
            }
        }
        diracs.canonicalize();
        d.diracs = std::move(diracs);
    }
    return d;
}

MeasureDescription parse_measure_description_text(const std::string& text) {
    std::istringstream in(text);
    return parse_measure_description(in);
}

MeasureSeries realize(const MeasureDescription& desc) {
    if (desc.raw) return measure_from_series(*desc.raw, Provenance::raw, desc.label);
    return amice_transform(*desc.diracs, desc.order_s, desc.order_t);
}

namespace {

void write_header(std::ostream& out, const std::string& title, const RingSpec& ring, int eff,
                  int order_s, int order_t, int arity) {
    out << "# " << title << "\n";
    out << "p " << ring.p << "\n";
    out << "M " << ring.capacity << "\n";
    out << "M_eff " << eff << "\n";
    out << "N_S " << order_s << "\n";
    if (arity == 2) out << "N_T " << order_t << "\n";
    if (ring.tag == RingTag::polyq) out << "ring polyq " << ring.qbound << "\n";
}

} // namespace

void write_series_table(std::ostream& out, const Series& f, const std::string& title) {
    write_header(out, title, f.ring(), f.min_eff(), f.order(Var::S), f.order(Var::T), f.arity());
    if (f.arity() == 1) {
        for (int i = 0; i <= f.order(Var::S); ++i) out << "S^" << i << " " << f.at(i).str() << "\n";
    } else {
        for (int i = 0; i <= f.order(Var::S); ++i)
            for (int j = 0; j <= f.order(Var::T); ++j)
                out << "S^" << i << "*T^" << j << " " << f.at(i, j).str() << "\n";
    }
}

void write_moment_table(std::ostream& out, const MeasureSeries& m, int kmax, int lmax) {
    write_header(out, "moments", m.ring(), m.series.min_eff(), kmax,
                 m.arity() == 2 ? lmax : 0, m.arity());
    for (int k = 0; k <= kmax; ++k) {
        if (m.arity() == 2) {
            for (int l = 0; l <= lmax; ++l)
                out << "k " << k << " l " << l << " " << moment(m, k, l).str() << "\n";
        } else {
            out << "k " << k << " " << moment(m, k).str() << "\n";
        }
    }
}

void write_grid_table(std::ostream& out, const MomentGrid& grid) {
    write_header(out, "moment grid (" + grid.source() + ")", grid.ring(),
                 grid.ring().capacity, grid.order_s(), 0, 1);
    out << "level " << grid.level() << "\n";
    for (int k = 0; k <= grid.level(); ++k)
        for (int l = 0; k + l <= grid.level(); ++l) {
            const Series& cell = grid.at(k, l);
            for (int i = 0; i <= cell.order(Var::S); ++i)
                out << "k " << k << " l " << l << " S^" << i << " " << cell.at(i).str() << "\n";
        }
}

const char* mode_name(RestrictionMode mode) {
    return mode == RestrictionMode::units ? "restrict" : "stabilize";
}

void write_verify_report(std::ostream& out, const VerifyReport& rep, const RingSpec& ring,
                         RestrictionMode mode) {
    out << "# polylog verification\n";
    out << "p " << ring.p << "\n";
    out << "M " << ring.capacity << "\n";
    out << "level " << rep.level << "\n";
    out << "mode " << mode_name(mode) << "\n";
    for (const auto& c : rep.cells) {
        out << "k " << c.k << " l " << c.l << " val " << (c.lower_bound ? ">=" : "")
            << c.discrepancy_valuation << " eff " << c.eff << " " << (c.ok ? "ok" : "FAIL")
            << "\n";
    }
    out << "RESULT " << (rep.pass ? "pass" : "fail") << "\n";
}

void write_crosscheck_report(std::ostream& out, const CrossCheckReport& rep,
                             const RingSpec& ring, RestrictionMode mode) {
    out << "# solver cross-check\n";
    out << "p " << ring.p << "\n";
    out << "M " << ring.capacity << "\n";
    out << "level " << rep.level << "\n";
    out << "mode " << mode_name(mode) << "\n";
    for (const auto& c : rep.cells) {
        out << "k " << c.k << " l " << c.l << " val " << (c.lower_bound ? ">=" : "")
            << c.discrepancy_valuation << " eff " << c.eff << " " << (c.ok ? "ok" : "FAIL")
            << "\n";
    }
    out << "ode_identities " << (rep.ode_identities ? "ok" : "FAIL") << "\n";
    out << "trace_zero " << (rep.trace_zero ? "ok" : "FAIL") << "\n";
    out << "RESULT " << (rep.pass ? "pass" : "fail") << "\n";
}

} // namespace amice
