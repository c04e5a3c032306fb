#include "cyclebound/min_m.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "cyclebound/bounds.hpp"
#include "cyclebound/error.hpp"
#include "cyclebound/interval.hpp"
#include "cyclebound/wide_uint.hpp"

namespace cyclebound {

namespace {

// Exact comparisons above this many bits are not attempted.
constexpr std::uint64_t kExactCompareBitLimit = std::uint64_t{1} << 24;

constexpr std::uint64_t kNoAnswer = std::numeric_limits<std::uint64_t>::max();

BigInt floor_of(mpfr_srcptr v) {
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(v));
  mpfr_floor(t, v);
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clear(t);
  return out;
}

// floor(2^bits / v) with v rounded as requested.
BigInt scaled_reciprocal(mpfr_srcptr v, unsigned bits, bool round_up) {
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(v) + bits);
  mpfr_ui_div(t, 1, v, round_up ? MPFR_RNDU : MPFR_RNDD);
  mpfr_mul_2ui(t, t, bits, round_up ? MPFR_RNDU : MPFR_RNDD);
  if (round_up) mpfr_ceil(t, t); else mpfr_floor(t, t);
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clear(t);
  return out;
}

std::uint64_t resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

template <std::size_t Limbs>
class BetaScanKernel {
 public:
  using Word = WideUint<Limbs>;

  BetaScanKernel(const BigInt& frac_log2p, const BigInt& q_lo, const BigInt& q_hi,
                 const BigInt& a_min, const PqSystem& system, std::span<const unsigned> ladder)
      : step_(Word::from_big(frac_log2p)),
        q_lo_(Word::from_big(q_lo)),
        q_reject_(Word::from_big(q_hi + 1)),
        a_min_(a_min),
        system_(system),
        ladder_(ladder) {
    // Largest m for which m * (q_hi + 1) still fits without saturation.
    BigInt limit = (BigInt(1) << static_cast<mp_bitcnt_t>(Word::kBits)) - 1;
    limit /= q_hi + 1;
    unsafe_from_ = limit >= to_big(kNoAnswer - 1) ? kNoAnswer : limit.get_ui() + 1;
  }

  /// First accepted m in [lo, hi], appending any guard-band decisions.
  std::optional<std::uint64_t> run(std::uint64_t lo, std::uint64_t hi, std::vector<NearTie>& ties) const {
    const Word step = step_;
    const Word q_reject = q_reject_;
    Word distance = step.mul_wrapping(lo).negated();
    Word reject_at = q_reject.mul_saturating(lo);

    // Up to fast_end, m * (q_hi + 1) cannot overflow, so reject_at is exact.
    const std::uint64_t fast_end = std::min(hi, unsafe_from_ - 1);
    std::uint64_t m = lo;
    for (; m <= fast_end; ++m) {
      if (distance < reject_at) [[unlikely]] {
        if (settle(m, distance, ties)) return m;
      }
      distance = distance - step;
      reject_at.add_in_place(q_reject);
    }
    // Beyond it the reject threshold may have saturated, so every remaining
    // m takes the slow decision.
    for (; m <= hi; ++m) {
      if (settle(m, distance, ties)) return m;
      distance = distance - step;
    }
    return std::nullopt;
  }

 private:
  bool settle(std::uint64_t m, const Word& distance, std::vector<NearTie>& ties) const {
    // No wrap-around in the m-ulp error of the running product, and strictly
    // below the smallest admissible threshold: certainly accepted.
    const Word accept_below = q_lo_.mul_saturating(m);
    if (Word::from_u64(m) < distance && distance < accept_below) return true;
    NearTie tie = decide_beta_condition(m, a_min_, system_, ladder_);
    const bool accepted = tie.accepted;
    ties.push_back(std::move(tie));
    return accepted;
  }

  Word step_;
  Word q_lo_;
  Word q_reject_;
  std::uint64_t unsafe_from_ = kNoAnswer;
  BigInt a_min_;
  PqSystem system_;
  std::span<const unsigned> ladder_;
};

struct ScanPlan {
  std::uint64_t first = 2;
  std::uint64_t last = 2;
  std::uint64_t chunk = 1;
  std::uint64_t workers = 1;
};

template <std::size_t Limbs>
std::uint64_t run_scan(const BetaScanKernel<Limbs>& kernel, const ScanPlan& plan,
                       const std::function<void(std::uint64_t)>& progress,
                       std::vector<NearTie>& ties_out) {
  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<std::uint64_t> best{kNoAnswer};
  std::mutex merge;
  std::exception_ptr failure;
  std::atomic<bool> abort{false};
  const std::uint64_t chunks = (plan.last - plan.first) / plan.chunk + 1;

  auto worker = [&] {
    std::vector<NearTie> local;
    try {
      for (;;) {
        const std::uint64_t index = next_chunk.fetch_add(1);
        if (index >= chunks || abort.load()) break;
        const std::uint64_t lo = plan.first + index * plan.chunk;
        // Chunks are claimed in increasing order, so everything below the
        // final answer is always scanned in full.
        if (lo > best.load()) break;
        const std::uint64_t hi = std::min(plan.last, lo + (plan.chunk - 1));
        if (auto found = kernel.run(lo, hi, local)) {
          std::uint64_t cur = best.load();
          while (*found < cur && !best.compare_exchange_weak(cur, *found)) {
          }
        }
        if (progress) {
          std::lock_guard lock(merge);
          progress(hi);
        }
      }
    } catch (...) {
      std::lock_guard lock(merge);
      if (!failure) failure = std::current_exception();
      abort = true;
    }
    std::lock_guard lock(merge);
    for (auto& t : local) ties_out.push_back(std::move(t));
  };

  std::vector<std::thread> pool;
  for (std::uint64_t i = 1; i < plan.workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return best.load();
}

}  // namespace

const char* to_string(SearchClass c) { return c == SearchClass::Alpha ? "alpha" : "beta"; }

bool MinMResult::same_outcome(const MinMResult& o) const {
  return minimal_m == o.minimal_m && search == o.search && system == o.system &&
         a_min_input == o.a_min_input && precision_bits == o.precision_bits &&
         threshold == o.threshold && near_ties == o.near_ties;
}

MinMResult min_m_alpha(const BigInt& a_min, const PqSystem& system, unsigned bits) {
  validate(system);
  if (sgn(a_min) <= 0) throw Error(ErrorKind::InvalidArgument, "a_min must be positive");
  if (bits < kDefaultAlphaBits) bits = kDefaultAlphaBits;

  MinMResult out;
  out.search = SearchClass::Alpha;
  out.system = system;
  out.a_min_input = a_min;

  for (unsigned prec = bits;; prec = std::min(prec * 2, kMaxPrecisionBits)) {
    const BoundValue rhs = rhs_threshold(a_min, system, prec);
    out.precision_bits = prec;
    out.threshold = rhs.value.bounds_string(12);
    if (rhs.value.is_point()) {
      // Only q == p * a_min gives an integer threshold (exactly 1).
      out.minimal_m = floor_of(rhs.value.lower()) + 1;
      return out;
    }
    if (auto fl = rhs.value.common_floor()) {
      out.minimal_m = *fl + 1;
      return out;
    }
    out.near_ties.push_back(NearTie{floor_of(rhs.value.upper()), false, prec, false,
                                    "threshold enclosure straddles an integer"});
    if (prec == kMaxPrecisionBits) {
      throw Error(ErrorKind::EscalationExhausted,
                  "alpha threshold " + out.threshold + " straddles an integer at maximum precision");
    }
  }
}

NearTie decide_beta_condition(std::uint64_t m, const BigInt& a_min, const PqSystem& system,
                              std::span<const unsigned> ladder) {
  validate(system);
  NearTie tie;
  tie.m = to_big(m);
  for (unsigned bits : ladder) {
    try {
      const Interval rhs = rhs_threshold(a_min, system, bits).value;
      const unsigned prec = bits + 32;
      const Interval gap = Interval::exact(std::uint64_t{1}, prec) - frac_m_log2p(m, system.p, prec);
      if (!gap.positive()) continue;
      const Interval lhs = Interval::exact(m, prec) / gap;
      if (lhs.certainly_greater(rhs) || lhs.certainly_less(rhs)) {
        tie.accepted = lhs.certainly_greater(rhs);
        tie.decided_at_bits = bits;
        tie.margin = (lhs - rhs).midpoint_string(24);
        return tie;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PrecisionUnachievable) throw;
    }
  }

  // lhs(m) > rhs  <=>  (p a + q)^m > 2^{floor(m log2 p) + 1} a^m
  const BigInt base = to_big(system.p) * a_min + to_big(system.q);
  const auto bits_needed = static_cast<std::uint64_t>(mpz_sizeinbase(base.get_mpz_t(), 2)) * m;
  if (bits_needed > kExactCompareBitLimit) {
    throw Error(ErrorKind::EscalationExhausted,
                "beta condition at m=" + std::to_string(m) + " undecided after the precision ladder");
  }
  const auto mm = static_cast<unsigned long>(m);
  BigInt left, right;
  mpz_pow_ui(left.get_mpz_t(), base.get_mpz_t(), mm);
  mpz_pow_ui(right.get_mpz_t(), a_min.get_mpz_t(), mm);
  const BigInt shift = floor_m_log2p(m, system.p) + 1;
  mpz_mul_2exp(right.get_mpz_t(), right.get_mpz_t(), shift.get_ui());
  const int c = cmp(left, right);
  tie.accepted = c > 0;
  tie.exact = true;
  tie.decided_at_bits = 0;
  tie.margin = c == 0 ? "0" : (c > 0 ? "+exact" : "-exact");
  return tie;
}

MinMResult min_m_beta_scan(const BigInt& a_min, const PqSystem& system, const ScanConfig& config) {
  validate(system);
  if (sgn(a_min) <= 0) throw Error(ErrorKind::InvalidArgument, "a_min must be positive");
  const unsigned bits = config.precision_bits;
  if (bits == 0 || bits % 64 != 0 || bits > 256) {
    throw Error(ErrorKind::InvalidArgument, "scan precision must be 64, 128, 192 or 256 bits");
  }
  if (config.chunk_size == 0) throw Error(ErrorKind::InvalidArgument, "chunk size must be positive");
  if (config.escalation_bits.empty()) throw Error(ErrorKind::InvalidArgument, "empty escalation ladder");

  MinMResult out;
  out.search = SearchClass::Beta;
  out.system = system;
  out.a_min_input = a_min;
  out.precision_bits = bits;
  out.chunk_size = config.chunk_size;
  out.workers = static_cast<unsigned>(resolve_workers(config.workers));

  const unsigned rhs_bits = std::max(256u, bits + 64);
  const Interval rhs = rhs_threshold(a_min, system, rhs_bits).value;
  out.threshold = rhs.bounds_string(12);

  // lhs(m) >= m for every m, strictly when frac(m log2 p) > 0, so any m past
  // the threshold is accepted.
  if (system.p == 1) {
    // frac(m log2 1) = 0, so lhs(m) = m and this is the alpha search from 2.
    MinMResult a = min_m_alpha(a_min, system);
    out.minimal_m = std::max(a.minimal_m, BigInt(2));
    out.near_ties = std::move(a.near_ties);
    return out;
  }
  if (mpfr_cmp_ui(rhs.upper(), 2) <= 0) {
    out.minimal_m = 2;
    return out;
  }

  const BigInt cap_big = floor_of(rhs.upper()) + 1;
  std::uint64_t last = config.max_m;
  if (last == 0) {
    last = cap_big > to_big(kNoAnswer - 1) ? kNoAnswer - 1 : cap_big.get_ui();
  }
  if (last < 2) throw Error(ErrorKind::InvalidArgument, "max_m must be at least 2");

  const FixedFraction f = log2_frac(system.p, bits);
  const BigInt q_lo = scaled_reciprocal(rhs.upper(), bits, false);
  const BigInt q_hi = scaled_reciprocal(rhs.lower(), bits, true);

  ScanPlan plan{2, last, config.chunk_size, resolve_workers(config.workers)};
  std::vector<NearTie> ties;
  std::uint64_t best = kNoAnswer;
  auto go = [&](auto limbs) {
    constexpr std::size_t L = decltype(limbs)::value;
    BetaScanKernel<L> kernel(f.numerator, q_lo, q_hi, a_min, system, config.escalation_bits);
    best = run_scan(kernel, plan, config.progress, ties);
  };
  switch (bits / 64) {
    case 1: go(std::integral_constant<std::size_t, 1>{}); break;
    case 2: go(std::integral_constant<std::size_t, 2>{}); break;
    case 3: go(std::integral_constant<std::size_t, 3>{}); break;
    default: go(std::integral_constant<std::size_t, 4>{}); break;
  }
  if (best == kNoAnswer) {
    throw Error(ErrorKind::OutOfRange, "no m <= " + std::to_string(last) + " satisfies the beta condition");
  }

  std::erase_if(ties, [&](const NearTie& t) { return t.m > to_big(best); });
  std::sort(ties.begin(), ties.end(), [](const NearTie& a, const NearTie& b) { return a.m < b.m; });
  out.minimal_m = to_big(best);
  out.near_ties = std::move(ties);
  return out;
}

}  // namespace cyclebound
