#include "loglist/formats.hpp"

#include <charconv>
#include <istream>
#include <ostream>

namespace loglist::formats {

using rearrange::OpKind;
using rearrange::Permutation;
using rearrange::RearrangeOp;

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool blank(std::string_view line) { return tokens(line).empty(); }

template <typename T>
T number(std::string_view tok) {
  T value{};
  const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || end != tok.data() + tok.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(tok) + "'");
  }
  return value;
}

struct OpName {
  std::string_view name;
  OpKind kind;
  std::size_t arity;
};

constexpr OpName kOpNames[] = {
    {"tr", OpKind::tr, 3},     {"rv", OpKind::rv, 2},         {"rvs", OpKind::rv_signed, 2},
    {"preftr", OpKind::preftr, 2}, {"prefrv", OpKind::prefrv, 1}, {"bi", OpKind::bi, 4},
};

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Permutation parse_permutation(std::string_view line) {
  Permutation p;
  for (std::string_view tok : tokens(line)) {
    bool negative = false;
    if (tok.front() == '+' || tok.front() == '-') {
      p.is_signed = true;
      negative = tok.front() == '-';
      tok.remove_prefix(1);
    }
    if (tok.empty() || tok.front() == '+' || tok.front() == '-') {
      throw std::invalid_argument("malformed sign");
    }
    const auto v = number<CostValue>(tok);
    p.values.push_back(negative ? -v : v);
  }
  rearrange::validate(p);
  return p;
}

std::string format_permutation(const Permutation& p) {
  std::string out;
  for (std::size_t q = 0; q < p.size(); ++q) {
    if (q > 0) out += ' ';
    if (p.is_signed && p.values[q] > 0) out += '+';
    out += std::to_string(p.values[q]);
  }
  return out;
}

std::vector<Permutation> read_permutations(std::istream& in) {
  std::vector<Permutation> out;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (blank(line)) continue;
    try {
      out.push_back(parse_permutation(line));
    } catch (const std::exception& e) {
      throw ParseError(no, e.what());
    }
  }
  return out;
}

RearrangeOp parse_op(std::string_view line) {
  const std::vector<std::string_view> tok = tokens(line);
  if (tok.empty()) throw std::invalid_argument("empty operation");
  for (const OpName& name : kOpNames) {
    if (name.name != tok[0]) continue;
    if (tok.size() != name.arity + 1) {
      throw std::invalid_argument(std::string(name.name) + " takes " + std::to_string(name.arity) + " indices");
    }
    RearrangeOp op{name.kind, {}};
    for (std::size_t q = 0; q < name.arity; ++q) op.idx[q] = number<std::size_t>(tok[q + 1]);
    return op;
  }
  throw std::invalid_argument("unknown operation '" + std::string(tok[0]) + "'");
}

std::string format_op(const RearrangeOp& op) {
  std::string out;
  for (const OpName& name : kOpNames) {
    if (name.kind == op.kind) out = name.name;
  }
  for (std::size_t q = 0; q < op.arity(); ++q) out += ' ' + std::to_string(op.idx[q]);
  return out;
}

std::vector<std::vector<RearrangeOp>> read_traces(std::istream& in) {
  std::vector<std::vector<RearrangeOp>> blocks;
  std::vector<RearrangeOp> current;
  bool open = false;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (blank(line)) {
      blocks.push_back(std::move(current));
      current.clear();
      open = false;
      continue;
    }
    try {
      current.push_back(parse_op(line));
    } catch (const std::exception& e) {
      throw ParseError(no, e.what());
    }
    open = true;
  }
  if (open) blocks.push_back(std::move(current));
  return blocks;
}

void write_trace(std::ostream& out, const rearrange::SortTrace& trace) {
  for (const RearrangeOp& op : trace.ops) out << format_op(op) << '\n';
  out << '\n';
}

}  // namespace loglist::formats
