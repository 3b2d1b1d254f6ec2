#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "convlimit/expansion.hpp"
#include "convlimit/symbol.hpp"
#include "convlimit/verifier.hpp"

namespace convlimit {

/// Parses a decimal number or an exact fraction string like "2/3".
double parse_rational(const std::string& text);

/// Shortest round-trip decimal form, stable across runs.
std::string format_double(double v);

/// {"entries": [[offset, re, im], ...]}; re and im accept numbers or
/// fraction strings.
ComplexSequence read_sequence_json(std::istream& in);
ComplexSequence read_sequence_file(const std::string& path);
void write_sequence_json(std::ostream& out, const ComplexSequence& a);

void write_profile_json(std::ostream& out, const SymbolProfile& profile);

/// {"sigma": s, "terms": [[degX, degY, re, im], ...]}
void write_polynomial_json(std::ostream& out, int sigma, const BivariatePolynomial& poly);

/// Columns: n, j, green_re, green_im, expansion_re, expansion_im, err_abs,
/// X_1..X_K, scaled_err.
void write_report_csv(std::ostream& out, const VerificationReport& report);

void write_summary_json(std::ostream& out, const VerificationReport& report,
                        const RemainderEnvelope& envelope,
                        const std::map<int, double>* berry_esseen);

void write_green_csv(std::ostream& out, const std::vector<std::pair<int, ComplexSequence>>& rows);

}  // namespace convlimit
