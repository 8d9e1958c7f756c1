#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "loglist/rearrange.hpp"

// Line-oriented text formats used by the command-line tool. Indices in
// traces are 1-based positions, exactly as RearrangeOp stores them.
namespace loglist::formats {

/// A malformed input line. line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Whitespace-separated integers. The permutation is signed as soon as one
/// entry carries an explicit '+' or '-'. Throws std::invalid_argument.
rearrange::Permutation parse_permutation(std::string_view line);
/// Signed permutations print every sign, so the output parses back as signed.
std::string format_permutation(const rearrange::Permutation& p);

/// Blank lines are skipped; errors carry the physical line number.
std::vector<rearrange::Permutation> read_permutations(std::istream& in);

/// `preftr j k`, `prefrv j`, `tr i j k`, `rv i j`, `rvs i j` or `bi i j k l`.
/// Only the shape is checked here; bounds depend on the permutation.
rearrange::RearrangeOp parse_op(std::string_view line);
std::string format_op(const rearrange::RearrangeOp& op);

/// Each block is a run of operation lines closed by a blank line (the last
/// one may run to end of file). An empty block is a lone blank line.
std::vector<std::vector<rearrange::RearrangeOp>> read_traces(std::istream& in);
void write_trace(std::ostream& out, const rearrange::SortTrace& trace);

}  // namespace loglist::formats
