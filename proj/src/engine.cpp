#include "esig/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "esig/errors.hpp"
#include "esig/rng.hpp"

namespace esig {

namespace {

// Reported error may exceed the requested tolerance by this factor before the
// evaluation is treated as a quadrature failure (the bound sums every nesting
// level, so it is conservative).
constexpr double kToleranceFailureFactor = 20.0;

// Slot state during integration: absolute times plus, for integrated slots,
// the exact offset from the lower integration endpoint (the base slot).
// Gaps between chained slots are sums of offsets, so near-diagonal pairing
// integrands are evaluated without catastrophic cancellation; for H < 1/2 a
// visible share of each arc integral lives at gaps below the resolution of
// absolute times.
struct SlotCtx {
  std::vector<double> abs;
  std::vector<double> off;
  std::vector<int> base;

  explicit SlotCtx(std::size_t slots)
      : abs(slots, 0.0), off(slots, 0.0), base(slots, -1) {}

  // u[hi] - u[lo] for hi above lo, exact along the base chain.
  double diff(int hi, int lo) const {
    double acc = 0.0;
    int cur = hi;
    while (cur != lo) {
      if (base[static_cast<std::size_t>(cur)] < 0)
        return abs[static_cast<std::size_t>(hi)] - abs[static_cast<std::size_t>(lo)];
      acc += off[static_cast<std::size_t>(cur)];
      cur = base[static_cast<std::size_t>(cur)];
    }
    return acc;
  }
};

// One multiplicative factor of the integrand, reading time values by slot:
// slot 0 holds s, slot n+1 holds t, slot k the time at position k.
//
//   arc         d12R(u[s0], u[s1])
//   consec      R'(u[s1])/2 - d2R(u[s0], u[s1])           (s0 = anchor)
//   d2diff      d2R(u[s2], u[s0]) - d2R(u[s1], u[s0])     (arc integrated at
//               its later variable; limits s1 < s2 above the partner s0)
//   d2diff_blw  d2R(u[s2], u[s0]) - d2R(u[s1], u[s0])     (arc integrated at
//               its earlier variable; limits s1 < s2 below the partner s0)
//   pairvar     (R(u[s0]) + R(u[s1]))/2 - R(u[s0], u[s1]) (consec integrated)
//   inccov      E[X_{s2 s3} X_{s0 s1}], interval (s2,s3) earlier in time
struct Factor {
  enum class Kind { arc, consec, d2diff, d2diff_blw, pairvar, inccov };
  Kind kind;
  std::array<int, 4> slot{-1, -1, -1, -1};

  int arity() const {
    switch (kind) {
      case Kind::arc:
      case Kind::consec:
      case Kind::pairvar:
        return 2;
      case Kind::d2diff:
      case Kind::d2diff_blw:
        return 3;
      case Kind::inccov:
        return 4;
    }
    return 0;
  }

  double eval(const CovarianceModel& m, const SlotCtx& u) const {
    switch (kind) {
      case Kind::arc:
        return m.d12_gap(u.abs[slot[0]], u.diff(slot[1], slot[0]));
      case Kind::consec:
        return m.onepair_gap(u.abs[slot[0]], u.diff(slot[1], slot[0]));
      case Kind::d2diff:
        return m.d2_gap_diff(u.abs[slot[0]], u.diff(slot[1], slot[0]),
                             u.diff(slot[2], slot[0]));
      case Kind::d2diff_blw:
        return m.d2_below_diff(u.abs[slot[0]], u.diff(slot[0], slot[2]),
                               u.diff(slot[0], slot[1]));
      case Kind::pairvar:
        return m.half_inc_var_gap(u.abs[slot[0]], u.diff(slot[1], slot[0]));
      case Kind::inccov:
        // Intervals (s2, s3) then (s0, s1) in time order.
        return m.inc_cov_disjoint(u.abs[slot[2]], u.diff(slot[3], slot[2]),
                                  u.diff(slot[0], slot[3]), u.diff(slot[1], slot[0]));
    }
    return 0.0;
  }
};

bool slot_integrable(Factor::Kind kind, int slot_index) {
  switch (kind) {
    case Factor::Kind::arc:
      return slot_index == 0 || slot_index == 1;
    case Factor::Kind::consec:
      return slot_index == 1;
    case Factor::Kind::d2diff:
    case Factor::Kind::d2diff_blw:
      return slot_index == 0;
    default:
      return false;
  }
}

// Replace a factor by its antiderivative difference over (u[lo], u[hi]):
//   arc in either variable   -> d2diff / d2diff_blw  (d12R integrates to d2R)
//   consec in its main slot  -> pairvar              (the one-pair identity)
//   d2diff* in the partner   -> inccov               (d2R integrates to R)
Factor integrate_factor(const Factor& f, int slot_index, int lo, int hi) {
  Factor out;
  switch (f.kind) {
    case Factor::Kind::arc:
      if (slot_index == 1) {
        if (lo == f.slot[0])
          throw std::logic_error("engine: arc limits may not touch the partner");
        out.kind = Factor::Kind::d2diff;
        out.slot = {f.slot[0], lo, hi, -1};
      } else {
        if (hi == f.slot[1])
          throw std::logic_error("engine: arc limits may not touch the partner");
        out.kind = Factor::Kind::d2diff_blw;
        out.slot = {f.slot[1], lo, hi, -1};
      }
      return out;
    case Factor::Kind::consec:
      if (lo != f.slot[0])
        throw std::logic_error("engine: consecutive-pair lower limit must be its anchor");
      out.kind = Factor::Kind::pairvar;
      out.slot = {f.slot[0], hi, -1, -1};
      return out;
    case Factor::Kind::d2diff:
      out.kind = Factor::Kind::inccov;
      out.slot = {f.slot[1], f.slot[2], lo, hi};
      return out;
    case Factor::Kind::d2diff_blw:
      out.kind = Factor::Kind::inccov;
      out.slot = {lo, hi, f.slot[1], f.slot[2]};
      return out;
    default:
      throw std::logic_error("engine: factor not integrable");
  }
}

struct KernelIR {
  int n = 0;
  std::vector<int> free_pos;    // sorted single positions
  std::vector<int> quad_vars;   // positions still integrated numerically
  std::vector<Factor> factors;
  std::vector<int> lower_slot;  // per quad var: previous quad/free/0 slot
  std::vector<int> upper_slot;  // per quad var: next free/(n+1) slot
};

KernelIR build_ir(const Diagram& diagram, QuadratureConfig::Reduction reduction) {
  KernelIR ir;
  ir.n = diagram.n;
  ir.free_pos = diagram.singles();

  std::vector<int> remaining;  // retained positions, ascending
  {
    std::vector<bool> eliminated(static_cast<std::size_t>(ir.n) + 2, false);
    for (const auto& pr : diagram.pairs)
      if (Diagram::is_consecutive(pr)) eliminated[static_cast<std::size_t>(pr.first)] = true;
    std::vector<bool> single(static_cast<std::size_t>(ir.n) + 2, false);
    for (int p : ir.free_pos) single[static_cast<std::size_t>(p)] = true;
    for (int p = 1; p <= ir.n; ++p)
      if (!eliminated[static_cast<std::size_t>(p)] && !single[static_cast<std::size_t>(p)])
        remaining.push_back(p);
  }

  for (const auto& pr : diagram.pairs) {
    Factor f;
    if (Diagram::is_consecutive(pr)) {
      f.kind = Factor::Kind::consec;
      f.slot = {pr.first - 1, pr.second, -1, -1};  // anchor u_{h-1}, with u_0 = s
    } else {
      f.kind = Factor::Kind::arc;
      f.slot = {pr.first, pr.second, -1, -1};
    }
    ir.factors.push_back(f);
  }

  // Fold factors into model antiderivatives where a variable occurs in
  // exactly one factor, at an integrable slot. The integration limits are the
  // variable's neighbours among the positions still present.
  if (reduction != QuadratureConfig::Reduction::none) {
    const bool tail_only = reduction == QuadratureConfig::Reduction::tail;
    bool progress = true;
    while (progress && !remaining.empty()) {
      progress = false;
      for (std::size_t ri = remaining.size(); ri-- > 0;) {
        if (tail_only && ri + 1 != remaining.size()) break;
        const int p = remaining[ri];
        int count = 0, f_at = -1, slot_at = -1;
        for (std::size_t fi = 0; fi < ir.factors.size(); ++fi)
          for (int si = 0; si < ir.factors[fi].arity(); ++si)
            if (ir.factors[fi].slot[static_cast<std::size_t>(si)] == p) {
              ++count;
              f_at = static_cast<int>(fi);
              slot_at = si;
            }
        if (count != 1 || !slot_integrable(ir.factors[static_cast<std::size_t>(f_at)].kind, slot_at))
          continue;
        int lo = 0, hi = ir.n + 1;
        for (int q : remaining)
          if (q != p && q < p) lo = std::max(lo, q);
        for (int q : ir.free_pos) {
          if (q < p) lo = std::max(lo, q);
          if (q > p) hi = std::min(hi, q);
        }
        for (int q : remaining)
          if (q > p) hi = std::min(hi, q);
        ir.factors[static_cast<std::size_t>(f_at)] =
            integrate_factor(ir.factors[static_cast<std::size_t>(f_at)], slot_at, lo, hi);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(ri));
        progress = true;
        break;
      }
    }
  }

  ir.quad_vars = remaining;
  ir.lower_slot.resize(remaining.size());
  ir.upper_slot.resize(remaining.size());
  for (std::size_t k = 0; k < remaining.size(); ++k) {
    const int p = remaining[k];
    int lo = 0;
    for (int q : ir.quad_vars)
      if (q < p) lo = std::max(lo, q);
    for (int q : ir.free_pos)
      if (q < p) lo = std::max(lo, q);
    int hi = ir.n + 1;
    for (int q : ir.free_pos)
      if (q > p) hi = std::min(hi, q);
    ir.lower_slot[k] = lo;
    ir.upper_slot[k] = hi;
  }
  return ir;
}

class NestedEvaluator {
 public:
  NestedEvaluator(const CovarianceModel& model, const KernelIR& ir, const QuadratureConfig& cfg,
                  SlotCtx slots)
      : model_(model), ir_(ir), cfg_(cfg), u_(std::move(slots)) {
    const int dims = static_cast<int>(ir.quad_vars.size());
    rel_local_ = cfg.effective_rel_tol(dims) / std::max(1, dims);
    grading_ = cfg.grading_exponent > 0.0 ? cfg.grading_exponent : auto_grading(model.hoelder());
  }

  ValErr run() { return integrate_from(0); }

 private:
  double integrand() const {
    double v = 1.0;
    for (const auto& f : ir_.factors) v *= f.eval(model_, u_);
    return v;
  }

  void place(int slot, int base, double offset, double abs_value) {
    u_.abs[static_cast<std::size_t>(slot)] = abs_value;
    u_.off[static_cast<std::size_t>(slot)] = offset;
    u_.base[static_cast<std::size_t>(slot)] = base;
  }

  // Integrate level k over (lower, upper) with power-law grading toward both
  // endpoints. The offset of the variable from its lower endpoint is carried
  // exactly; nodes whose jacobian underflows contribute nothing.
  ValErr integrate_from(std::size_t k) {
    if (k == ir_.quad_vars.size()) return {integrand(), 0.0};
    const int lo_slot = ir_.lower_slot[k];
    const int hi_slot = ir_.upper_slot[k];
    const double a = u_.abs[static_cast<std::size_t>(lo_slot)];
    const double b = u_.abs[static_cast<std::size_t>(hi_slot)];
    const int p = ir_.quad_vars[k];
    if (!(b > a)) return {0.0, 0.0};

    const double g = grading_;
    if (g <= 1.0) {
      auto f = [&](double x) -> ValErr {
        place(p, lo_slot, x - a, x);
        return integrate_from(k + 1);
      };
      QuadOutcome q =
          adaptive_gk(f, a, b, rel_local_, cfg_.abs_tol, cfg_.max_segments, cfg_.max_depth);
      return {q.value, q.err};
    }

    const double m = 0.5 * (a + b);
    auto left = [&](double tau) -> ValErr {
      const double y = (m - a) * std::pow(tau, g);
      if (!(y > 0.0)) return {0.0, 0.0};
      const double jac = g * (m - a) * std::pow(tau, g - 1.0);
      place(p, lo_slot, y, a + y);
      ValErr r = integrate_from(k + 1);
      return {r.value * jac, r.err * jac};
    };
    auto right = [&](double tau) -> ValErr {
      const double yb = (b - m) * std::pow(tau, g);
      const double y = (b - a) - yb;
      if (!(y > 0.0 && yb > 0.0)) return {0.0, 0.0};
      const double jac = g * (b - m) * std::pow(tau, g - 1.0);
      place(p, lo_slot, y, b - yb);
      ValErr r = integrate_from(k + 1);
      return {r.value * jac, r.err * jac};
    };
    QuadOutcome ql = adaptive_gk(left, 0.0, 1.0, rel_local_, 0.5 * cfg_.abs_tol,
                                 cfg_.max_segments / 2, cfg_.max_depth);
    QuadOutcome qr = adaptive_gk(right, 0.0, 1.0, rel_local_, 0.5 * cfg_.abs_tol,
                                 cfg_.max_segments / 2, cfg_.max_depth);
    return {ql.value + qr.value, ql.err + qr.err};
  }

  const CovarianceModel& model_;
  const KernelIR& ir_;
  const QuadratureConfig& cfg_;
  SlotCtx u_;
  double rel_local_;
  double grading_;
};

double radical_inverse(int base, std::uint64_t i) {
  double f = 1.0, r = 0.0;
  while (i) {
    f /= base;
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
  }
  return r;
}

// Randomised quasi-Monte Carlo over the ordered blocks of the remaining
// variables (Halton points with seeded Cranley-Patterson shifts; the returned
// err is a standard error over the shift replicates).
ValErr qmc_integrate(const CovarianceModel& model, const KernelIR& ir, const QuadratureConfig& cfg,
                     SlotCtx slots) {
  static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  const int dims = static_cast<int>(ir.quad_vars.size());
  if (dims > 12) throw CapabilityError("qmc fallback supports at most 12 dimensions");

  // Blocks of consecutive variables sharing the same enclosing fixed times.
  struct Block {
    int first_var;  // index into quad_vars
    int count;
    int lo_slot;
    double lo, hi;
  };
  std::vector<Block> blocks;
  for (int k = 0; k < dims; ++k) {
    const double hi = slots.abs[static_cast<std::size_t>(ir.upper_slot[static_cast<std::size_t>(k)])];
    if (!blocks.empty() && blocks.back().hi == hi &&
        blocks.back().first_var + blocks.back().count == k) {
      ++blocks.back().count;
    } else {
      const int lo_slot = ir.lower_slot[static_cast<std::size_t>(k)];
      blocks.push_back({k, 1, lo_slot, slots.abs[static_cast<std::size_t>(lo_slot)], hi});
    }
  }
  double volume = 1.0;
  for (const auto& b : blocks) {
    double v = 1.0;
    for (int i = 1; i <= b.count; ++i) v *= (b.hi - b.lo) / static_cast<double>(i);
    volume *= v;
  }
  if (volume <= 0.0) return {0.0, 0.0};

  const int replicates = 8;
  const long per_rep = std::max<long>(64, cfg.mc_fallback_samples / replicates);
  std::vector<double> rep_means(replicates, 0.0);
  SlotCtx u = slots;
  for (int r = 0; r < replicates; ++r) {
    SplitMix64 rng(SplitMix64::mix(cfg.rng_seed, static_cast<std::uint64_t>(r) + 1));
    std::vector<double> shift(static_cast<std::size_t>(dims));
    for (auto& sft : shift) sft = rng.uniform();
    double acc = 0.0;
    for (long i = 0; i < per_rep; ++i) {
      bool ok = true;
      int dim_at = 0;
      for (const auto& blk : blocks) {
        double prev = blk.lo;
        int prev_slot = blk.lo_slot;
        for (int j = 0; j < blk.count; ++j, ++dim_at) {
          double x = radical_inverse(kPrimes[dim_at], static_cast<std::uint64_t>(i) + 64) +
                     shift[static_cast<std::size_t>(dim_at)];
          x -= std::floor(x);
          const int remaining = blk.count - j;
          const double step =
              (blk.hi - prev) * (1.0 - std::pow(1.0 - x, 1.0 / remaining));
          const double v = prev + step;
          if (!(step > 0.0 && v < blk.hi)) {
            ok = false;
            break;
          }
          const int slot = ir.quad_vars[static_cast<std::size_t>(blk.first_var + j)];
          u.abs[static_cast<std::size_t>(slot)] = v;
          u.off[static_cast<std::size_t>(slot)] = step;
          u.base[static_cast<std::size_t>(slot)] = prev_slot;
          prev = v;
          prev_slot = slot;
        }
        if (!ok) break;
      }
      if (!ok) continue;
      double fv = 1.0;
      for (const auto& f : ir.factors) fv *= f.eval(model, u);
      if (std::isfinite(fv)) acc += fv;
    }
    rep_means[static_cast<std::size_t>(r)] = acc / static_cast<double>(per_rep);
  }
  double mean = 0.0;
  for (double m : rep_means) mean += m;
  mean /= replicates;
  double var = 0.0;
  for (double m : rep_means) var += (m - mean) * (m - mean);
  var /= (replicates - 1);
  const double se = std::sqrt(var / replicates);
  return {volume * mean, volume * se};
}

struct KernelEvaluation {
  ValErr result;
  bool stochastic = false;
};

KernelEvaluation evaluate_ir(const CovarianceModel& model, const Diagram& diagram,
                             const QuadratureConfig& cfg, SlotCtx slots) {
  KernelIR ir = build_ir(diagram, cfg.reduction);
  const int dims = static_cast<int>(ir.quad_vars.size());
  if (dims == 0) {
    double v = 1.0;
    for (const auto& f : ir.factors) v *= f.eval(model, slots);
    return {{v, 0.0}, false};
  }
  if (dims <= cfg.max_det_dims) {
    NestedEvaluator ev(model, ir, cfg, std::move(slots));
    return {ev.run(), false};
  }
  return {qmc_integrate(model, ir, cfg, std::move(slots)), true};
}

void check_interval(const CovarianceModel& model, double s, double t) {
  if (!(s >= 0.0) || !(t >= s))
    throw std::invalid_argument("interval must satisfy 0 <= s <= t");
  if (t > model.usable_horizon() * (1.0 + 1e-12))
    throw std::invalid_argument("interval end " + std::to_string(t) +
                                " beyond usable horizon " + std::to_string(model.usable_horizon()));
}

int worker_count(std::size_t jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  long cap = static_cast<long>(hw);
  if (const char* env = std::getenv("ESIG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) cap = std::min<long>(cap, v);
  }
  return static_cast<int>(std::min<long>(cap, static_cast<long>(jobs)));
}

}  // namespace

ChaosKernel::ChaosKernel(const CovarianceModel& model, Diagram diagram, std::vector<int> word,
                         double s, double t)
    : model_(&model), diagram_(std::move(diagram)), word_(std::move(word)), s_(s), t_(t) {
  if (static_cast<int>(word_.size()) != diagram_.n)
    throw std::invalid_argument("ChaosKernel: word length must equal diagram size");
  check_interval(model, s, t);
  free_positions_ = diagram_.singles();
  for (const auto& pr : diagram_.pairs)
    if (Diagram::is_consecutive(pr)) eliminated_.push_back(pr.first);
  std::sort(eliminated_.begin(), eliminated_.end());
  std::vector<bool> drop(static_cast<std::size_t>(diagram_.n) + 1, false);
  for (int p : free_positions_) drop[static_cast<std::size_t>(p)] = true;
  for (int p : eliminated_) drop[static_cast<std::size_t>(p)] = true;
  for (int p = 1; p <= diagram_.n; ++p)
    if (!drop[static_cast<std::size_t>(p)]) retained_.push_back(p);
}

ValErr ChaosKernel::eval(std::span<const double> free_times, std::span<const int> free_indices,
                         const QuadratureConfig& cfg) const {
  const std::size_t m = free_positions_.size();
  if (free_times.size() != m || free_indices.size() != m)
    throw std::invalid_argument("ChaosKernel::eval: expected " + std::to_string(m) +
                                " free times and indices");
  for (std::size_t k = 0; k < m; ++k)
    if (free_indices[k] != word_[static_cast<std::size_t>(free_positions_[k] - 1)])
      return {0.0, 0.0};
  double prev = s_;
  for (double v : free_times) {
    if (!(v > prev)) return {0.0, 0.0};
    prev = v;
  }
  if (!(prev < t_) && m > 0) return {0.0, 0.0};
  if (!(t_ > s_)) return {diagram_.n == 0 ? 1.0 : 0.0, 0.0};

  SlotCtx slots(static_cast<std::size_t>(diagram_.n) + 2);
  slots.abs[0] = s_;
  slots.abs[static_cast<std::size_t>(diagram_.n) + 1] = t_;
  for (std::size_t k = 0; k < m; ++k)
    slots.abs[static_cast<std::size_t>(free_positions_[k])] = free_times[k];

  KernelEvaluation ev = evaluate_ir(*model_, diagram_, cfg, std::move(slots));
  if (!ev.stochastic) {
    const double target = std::max(cfg.abs_tol, cfg.effective_rel_tol(integration_count()) *
                                                    std::abs(ev.result.value));
    if (ev.result.err > kToleranceFailureFactor * target)
      throw QuadratureError("kernel quadrature failed to reach tolerance", ev.result.value,
                            ev.result.err);
  }
  return ev.result;
}

ValErr diagram_scalar(const Diagram& diagram, const CovarianceModel& model, double s, double t,
                      const QuadratureConfig& cfg) {
  if (diagram.num_singles() != 0)
    throw std::invalid_argument("diagram_scalar: diagram must have no single positions");
  ChaosKernel kernel(model, diagram, std::vector<int>(static_cast<std::size_t>(diagram.n), 1), s,
                     t);
  return kernel.eval({}, {}, cfg);
}

SignatureResult expected_signature(const CovarianceModel& model, int dim, int level, double s,
                                   double t, const QuadratureConfig& cfg) {
  if (dim < 1 || dim > kMaxDimension)
    throw CapabilityError("expected_signature: dimension must be in 1.." +
                          std::to_string(kMaxDimension));
  if (level < 0 || level > kMaxSignatureLevel)
    throw CapabilityError("expected_signature: level must be in 0.." +
                          std::to_string(kMaxSignatureLevel));
  check_interval(model, s, t);

  SignatureResult out{TensorPolynomial::identity(dim, level), TensorPolynomial(dim, level), {}};
  out.terms_by_level.resize(static_cast<std::size_t>(level) + 1);
  if (s == t) return out;

  for (int n = 2; n <= level; n += 2) {
    const std::vector<Diagram> diagrams = enumerate_pairings(n, 0);
    std::vector<TermResult> terms(diagrams.size());
    const int workers = worker_count(diagrams.size());
    auto run_chunk = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        SlotCtx slots(static_cast<std::size_t>(n) + 2);
        slots.abs[0] = s;
        slots.abs[static_cast<std::size_t>(n) + 1] = t;
        KernelEvaluation ev = evaluate_ir(model, diagrams[i], cfg, std::move(slots));
        terms[i] = {diagrams[i], ev.result.value, ev.result.err, ev.stochastic};
      }
    };
    if (workers <= 1) {
      run_chunk(0, diagrams.size());
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (diagrams.size() + static_cast<std::size_t>(workers) - 1) /
                                static_cast<std::size_t>(workers);
      for (int w = 0; w < workers; ++w) {
        const std::size_t begin = static_cast<std::size_t>(w) * chunk;
        const std::size_t end = std::min(diagrams.size(), begin + chunk);
        if (begin < end) pool.emplace_back(run_chunk, begin, end);
      }
      for (auto& th : pool) th.join();
    }

    for (const auto& term : terms) {
      if (term.stochastic) continue;
      const double target =
          std::max(cfg.abs_tol, cfg.effective_rel_tol(term.diagram.integration_count()) *
                                    std::abs(term.value));
      if (term.err > kToleranceFailureFactor * target)
        throw QuadratureError("diagram quadrature failed to reach tolerance", term.value,
                              term.err);
    }

    auto values = out.values.level_coeffs(n);
    auto errors = out.errors.level_coeffs(n);
    std::vector<int> word(static_cast<std::size_t>(n));
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
      word = word_from_index(idx, dim, n);
      double v = 0.0, e = 0.0;
      for (const auto& term : terms) {
        if (!index_compatible(term.diagram, word)) continue;
        v += term.value;
        e += term.err;
      }
      values[idx] = v;
      errors[idx] = e;
    }
    out.terms_by_level[static_cast<std::size_t>(n)] = std::move(terms);
  }
  return out;
}

std::vector<ChaosKernel> chaos_projection_kernels(const CovarianceModel& model,
                                                  std::span<const int> word, int m, double s,
                                                  double t) {
  const int n = static_cast<int>(word.size());
  if (m < 0 || m > n || (n - m) % 2 != 0) return {};
  std::vector<ChaosKernel> kernels;
  for (const Diagram& diagram : enumerate_pairings(n, m))
    kernels.emplace_back(model, diagram, std::vector<int>(word.begin(), word.end()), s, t);
  return kernels;
}

}  // namespace esig
