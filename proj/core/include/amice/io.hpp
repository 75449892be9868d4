#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "amice/logsheaf.hpp"

namespace amice {

// Parsed form of a measure description file. The file is line-oriented,
// whitespace-separated, '#' to end of line is a comment:
//
//   prime 3
//   precision 4
//   orders 12 6            # N_S [N_T]; one order means a one-variable measure
//   ring plain             # or: ring polyq 8
//   label D2-(1,1)         # optional
//   dirac 1 2 1            # x [y] coeff; coeff is an integer, or a
//   dirac 3 0 1,0,2        # comma list of q-coefficients in a polyq ring
//
// or, instead of dirac terms, a raw coefficient table:
//
//   raw
//   coeff 0 0 5            # i [j] value
struct MeasureDescription {
    RingSpec ring;
    int arity = 1;
    int order_s = 0;
    int order_t = 0;
    std::string label;
    std::optional<DiracCombination> diracs;
    std::optional<Series> raw;
};

MeasureDescription parse_measure_description(std::istream& in);
MeasureDescription parse_measure_description_text(const std::string& text);

// Build the measure the description denotes (the transform of the Dirac
// terms, or the raw series itself).
MeasureSeries realize(const MeasureDescription& desc);

// Canonical coefficient table: residues in [0, p^M) in decimal, one monomial
// per line in lexicographic order, header recording p, M, M_eff and orders.
void write_series_table(std::ostream& out, const Series& f, const std::string& title);

// Rectangular (k,l) table of ring elements.
void write_moment_table(std::ostream& out, const MeasureSeries& m, int kmax, int lmax);

void write_grid_table(std::ostream& out, const MomentGrid& grid);

void write_verify_report(std::ostream& out, const VerifyReport& rep, const RingSpec& ring,
                         RestrictionMode mode);

void write_crosscheck_report(std::ostream& out, const CrossCheckReport& rep,
                             const RingSpec& ring, RestrictionMode mode);

const char* mode_name(RestrictionMode mode);

} // namespace amice
