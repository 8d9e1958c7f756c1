#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "loglist/oracle.hpp"

namespace loglist::oracle {

using rearrange::OpKind;
using rearrange::Permutation;
using rearrange::RearrangeOp;
using rearrange::SortTrace;

namespace {

CostValue absdiff(CostValue a, CostValue b) { return a < b ? b - a : a - b; }

}  // namespace

// P[1..N] with N = n+1 holds the input and the sentinel; P[0] = 0 and
// P[N+1] = N+1 pad the inverse, but positions 0 and N+1 never satisfy a guard.
SortTrace sort_prefix_rt_naive(const Permutation& perm) {
  rearrange::validate(perm);
  if (perm.is_signed) throw std::invalid_argument("sorting needs an unsigned permutation");
  const std::size_t N = perm.size() + 1;
  std::vector<CostValue> P(N + 2);
  std::vector<std::size_t> inv(N + 2);
  for (std::size_t q = 1; q < N; ++q) P[q] = perm.values[q - 1];
  P[N] = static_cast<CostValue>(N);
  P[N + 1] = static_cast<CostValue>(N + 1);
  for (std::size_t q = 0; q <= N + 1; ++q) inv[static_cast<std::size_t>(P[q])] = q;
  std::vector<CostValue> id(N + 2);
  for (std::size_t q = 0; q < N + 2; ++q) id[q] = static_cast<CostValue>(q);

  const auto ok = [&](std::size_t q) { return q >= 1 && q <= N; };
  const auto where = [&](CostValue v) { return inv[static_cast<std::size_t>(v)]; };
  const auto differ = [&](std::size_t q) { return ok(q - 1) && ok(q) && absdiff(P[q - 1], P[q]) != 1; };

  SortTrace trace;
  while (std::memcmp(P.data(), id.data(), P.size() * sizeof(CostValue)) != 0) {
    std::size_t i = 1;
    while (i + 1 <= N && absdiff(P[i + 1], P[i]) == 1) ++i;

    std::optional<RearrangeOp> op;
    if (P[1] == 1) {
      op = RearrangeOp::preftr(i + 1, N);
    } else {
      const std::size_t a = where(P[1] - 1) + 1;
      const std::size_t b = where(P[1] + 1) + 1;
      if (differ(a)) {
        const std::size_t la = where(P[a] - 1) + 1;
        const std::size_t ra = where(P[a] + 1) + 1;
        if (ok(la) && P[la] != 1 && differ(la)) {
          if (la < a) op = RearrangeOp::preftr(la, a);
        } else if (ok(ra) && P[ra] != 1 && differ(ra)) {
          if (ra < a) op = RearrangeOp::preftr(ra, a);
        }
      } else if (differ(b)) {
        const std::size_t lb = where(P[b] - 1) + 1;
        const std::size_t rb = where(P[b] + 1) + 1;
        if (ok(lb) && P[lb] != 1 && differ(lb)) {
          if (lb < b) op = RearrangeOp::preftr(lb, b);
        } else if (ok(rb) && P[rb] != 1 && differ(rb)) {
          if (rb < b) op = RearrangeOp::preftr(rb, b);
        }
      }
      if (!op) {
        if (P[1] <= P[i]) {
          const std::size_t x = where(P[1] - 1);
          if (ok(x + 1) && P[x] == P[x + 1] + 1) {
            op = RearrangeOp::prefrv(x - 1);
          } else {
            op = RearrangeOp::preftr(i + 1, x + 1);
          }
        } else {
          const std::size_t y = where(P[1] + 1);
          if (ok(y - 1) && P[y] == P[y - 1] - 1) {
            op = RearrangeOp::preftr(i + 1, y + 1);
          } else {
            op = RearrangeOp::prefrv(y - 1);
          }
        }
      }
    }

    std::size_t touched = 0;
    if (op->kind == OpKind::preftr) {
      std::rotate(P.begin() + 1, P.begin() + static_cast<std::ptrdiff_t>(op->idx[0]),
                  P.begin() + static_cast<std::ptrdiff_t>(op->idx[1]));
      touched = op->idx[1] - 1;
    } else {
      std::reverse(P.begin() + 1, P.begin() + static_cast<std::ptrdiff_t>(op->idx[0]) + 1);
      touched = op->idx[0];
    }
    for (std::size_t q = 1; q <= touched; ++q) inv[static_cast<std::size_t>(P[q])] = q;
    trace.ops.push_back(*op);
    if (trace.ops.size() > 8 * N + 8) throw std::logic_error("array sorter made no progress");
  }
  return trace;
}

Permutation apply_op_formula(const Permutation& p, const RearrangeOp& op) {
  rearrange::validate(p);
  rearrange::validate(op, p.size(), p.is_signed);
  const std::size_t n = p.size();
  const auto at = [&](std::size_t q) { return p.values[q - 1]; };
  Permutation out{{}, p.is_signed};
  const auto copy = [&](std::size_t from, std::size_t to) {  // p_from..p_to, empty when to < from
    for (std::size_t q = from; q <= to && q <= n; ++q) out.values.push_back(at(q));
  };

  std::size_t i = 0, j = 0, k = 0, l = 0;
  switch (op.kind) {
    case OpKind::tr:
      i = op.idx[0], j = op.idx[1], k = op.idx[2];
      break;
    case OpKind::preftr:
      i = 1, j = op.idx[0], k = op.idx[1];
      break;
    case OpKind::rv:
    case OpKind::rv_signed:
      i = op.idx[0], j = op.idx[1];
      break;
    case OpKind::prefrv:
      i = 1, j = op.idx[0];
      break;
    case OpKind::bi:
      i = op.idx[0], j = op.idx[1], k = op.idx[2], l = op.idx[3];
      break;
  }

  switch (op.kind) {
    case OpKind::tr:
    case OpKind::preftr:
      // p_1 .. p_{i-1} p_j .. p_{k-1} p_i .. p_{j-1} p_k .. p_n
      copy(1, i - 1);
      copy(j, k - 1);
      copy(i, j - 1);
      copy(k, n);
      break;
    case OpKind::rv:
    case OpKind::prefrv:
    case OpKind::rv_signed:
      copy(1, i - 1);
      for (std::size_t q = j; q >= i; --q) out.values.push_back(op.kind == OpKind::rv_signed ? -at(q) : at(q));
      copy(j + 1, n);
      break;
    case OpKind::bi:
      // p_1 .. p_{i-1} p_k .. p_{l-1} p_j .. p_{k-1} p_i .. p_{j-1} p_l .. p_n
      copy(1, i - 1);
      copy(k, l - 1);
      copy(j, k - 1);
      copy(i, j - 1);
      copy(l, n);
      break;
  }
  return out;
}

}  // namespace loglist::oracle
