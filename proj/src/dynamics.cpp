#include "cyclebound/dynamics.hpp"

#include <set>

#include "cyclebound/error.hpp"

namespace cyclebound {

namespace {

void require_odd_positive(const BigInt& a, const char* what) {
  if (sgn(a) <= 0 || mpz_even_p(a.get_mpz_t())) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + " must be a positive odd integer (got " + to_decimal(a) + ")");
  }
}

BigInt pow2(std::uint64_t e) {
  BigInt r;
  mpz_setbit(r.get_mpz_t(), e);
  return r;
}

BigInt pow_u(std::uint64_t base, std::uint64_t e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

}  // namespace

std::vector<BigInt> Trajectory::odd_values() const {
  std::vector<BigInt> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.output);
  return out;
}

std::vector<unsigned> Trajectory::k_sequence() const {
  std::vector<unsigned> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.k);
  return out;
}

BigInt f_step(const BigInt& x, const PqSystem& system) {
  validate(system);
  if (sgn(x) <= 0) {
    throw Error(ErrorKind::InvalidArgument, "f_step needs a positive integer");
  }
  if (mpz_even_p(x.get_mpz_t())) return x / 2;
  return to_big(system.p) * x + to_big(system.q);
}

unsigned two_adic_valuation(const BigInt& v) {
  if (sgn(v) <= 0) throw Error(ErrorKind::InvalidArgument, "valuation of a nonpositive integer");
  return static_cast<unsigned>(mpz_scan1(v.get_mpz_t(), 0));
}

StepRecord t_step(const BigInt& a, const PqSystem& system) {
  validate(system);
  require_odd_positive(a, "t_step input");
  BigInt image = to_big(system.p) * a + to_big(system.q);
  const unsigned k = two_adic_valuation(image);
  StepRecord step{a, k, {}};
  mpz_tdiv_q_2exp(step.output.get_mpz_t(), image.get_mpz_t(), k);
  return step;
}

Trajectory t_trajectory(const BigInt& a, const PqSystem& system, const TrajectoryOptions& options) {
  validate(system);
  require_odd_positive(a, "trajectory start");
  if (options.max_steps == 0) throw Error(ErrorKind::InvalidArgument, "max_steps must be at least 1");

  Trajectory t{system, a, {}, {}, std::nullopt};
  t.steps.reserve(options.max_steps);
  t.s_partial.reserve(options.max_steps);
  BigInt current = a;
  std::uint64_t s = 0;
  std::set<BigInt> seen{a};
  for (std::size_t i = 0; i < options.max_steps; ++i) {
    StepRecord step = t_step(current, system);
    if (options.max_bits != 0 && mpz_sizeinbase(step.output.get_mpz_t(), 2) > options.max_bits) {
      throw Error(ErrorKind::ValueOverflow,
                  "trajectory value exceeded " + std::to_string(options.max_bits) + " bits at step " +
                      std::to_string(i + 1));
    }
    s += step.k;
    current = step.output;
    t.steps.push_back(std::move(step));
    t.s_partial.push_back(s);
    if (!t.returned_to_start_at && current == a) {
      t.returned_to_start_at = i + 1;
      if (options.stop_on_return) break;
    }
    if (options.stop_on_cycle) {
      const bool repeat = !seen.insert(current).second;
      if (repeat || t_step(current, system).output == current) {
        t.closed_cycle = true;
        break;
      }
    }
  }
  return t;
}

BigInt coefficient_cm(const Trajectory& trajectory, std::size_t m) {
  if (m == 0 || m > trajectory.length()) {
    throw Error(ErrorKind::OutOfRange, "c_m requested for m=" + std::to_string(m) +
                                           " on a trajectory of length " +
                                           std::to_string(trajectory.length()));
  }
  // Horner form of the recurrence c_{j+1} = p * c_j + 2^{S_j}.
  const BigInt p = to_big(trajectory.system.p);
  BigInt c = 1;
  std::uint64_t s = 0;
  for (std::size_t j = 1; j < m; ++j) {
    s += trajectory.steps[j - 1].k;
    c = c * p + pow2(s);
  }
  return c;
}

IdentityCheck verify_linear_form(const Trajectory& trajectory, std::size_t m) {
  const BigInt c = coefficient_cm(trajectory, m);
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < m; ++j) s += trajectory.steps[j].k;
  const auto& sys = trajectory.system;
  BigInt lhs = trajectory.steps[m - 1].output;
  mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), s);
  const BigInt rhs = pow_u(sys.p, m) * trajectory.start + to_big(sys.q) * c;
  IdentityCheck out;
  out.residual = lhs - rhs;
  out.pass = sgn(out.residual) == 0;
  return out;
}

IdentityCheck product_identity_residual(std::span<const BigInt> values, std::uint64_t s_m,
                                        const PqSystem& system) {
  validate(system);
  const BigInt p = to_big(system.p);
  const BigInt q = to_big(system.q);
  BigInt lhs = 1;
  BigInt rhs = 1;
  for (const auto& a : values) {
    lhs *= a;
    rhs *= p * a + q;
  }
  mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), s_m);
  IdentityCheck out;
  out.residual = lhs - rhs;
  out.pass = sgn(out.residual) == 0;
  return out;
}

IdentityCheck verify_product_identity(std::span<const BigInt> cycle_values, const PqSystem& system) {
  validate(system);
  if (cycle_values.empty()) throw Error(ErrorKind::NotACycle, "empty cycle");
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < cycle_values.size(); ++i) {
    const StepRecord step = t_step(cycle_values[i], system);
    const BigInt& expected = cycle_values[(i + 1) % cycle_values.size()];
    if (step.output != expected) {
      throw Error(ErrorKind::NotACycle, "T(" + to_decimal(cycle_values[i]) + ") = " +
                                            to_decimal(step.output) + ", expected " +
                                            to_decimal(expected));
    }
    s += step.k;
  }
  return product_identity_residual(cycle_values, s, system);
}

}  // namespace cyclebound
