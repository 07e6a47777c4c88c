#pragma once

#include <optional>

#include "belyi/certify.hpp"
#include "belyi/triple.hpp"

namespace belyi {

// 64-bit FNV-1a digest, rendered "fnv1a:<16 hex digits>".
std::string fnv1a_digest(const std::string& bytes);

// Reproducibility header: leading '#' comment lines on every artifact.
// Parsers skip them; identical config reproduces them byte for byte.
struct ReproHeader {
  std::string version = "0.1.0";
  unsigned long seed = 0;
  long precision_bits = 0;
  std::string input_digest = "-";
};

std::string render_header(const ReproHeader& h);
// Reads a header back from the leading comment lines (nullopt if absent).
std::optional<ReproHeader> parse_header(const std::string& text);

// Triple files: `n <deg>`, `s0 <images>`, `s1 <images>`, optional
// `sinf <images>`, 1-based, whitespace separated. Errors carry line numbers.
PermutationTriple parse_triple_text(const std::string& text);
std::string serialize_triple(const PermutationTriple& t, const ReproHeader* h = nullptr);

// Solution files: `precision_bits <P>`, `unknowns <U>`, then one line per
// coefficient `symbol re im` with ceil(0.302 * P) + 2 significant digits.
std::string serialize_solution(const BelyiAnsatz& a, const NumericSolution& s,
                               const ReproHeader* h = nullptr);
NumericSolution parse_solution_text(const std::string& text, const BelyiAnsatz& a);

// Certified map files: the field block (`field deg D` + D+1 integer
// coefficient lines, constant term first), the ansatz block (n,
// principal_width, factor lines, normalization, twist), the embedding, one
// `poly <name> deg k` block per factor and for p3/p2/pc (each coefficient a
// D-tuple of `num/den` entries), and the `certificate` key/value block.
std::string serialize_certified_map(const CertifiedBelyiMap& m, const ReproHeader* h = nullptr);
CertifiedBelyiMap parse_certified_map_text(const std::string& text);

// Profile + ansatz report as stable `key value` lines.
std::string analyze_report(const SubgroupProfile& p, const BelyiAnsatz& a,
                           const ReproHeader* h = nullptr);

// Whole-file helpers; InputError with the path on failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace belyi
