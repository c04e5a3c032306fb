#include <doctest.h>

#include "cyclebound/bounds.hpp"
#include "cyclebound/error.hpp"
#include "oracle.hpp"

using namespace cyclebound;
using oracle::Real;

namespace {

// True when the certified enclosure contains the oracle value (the oracle is
// accurate to far beyond the interval widths checked here).
bool encloses(const Interval& iv, const Real& v, double slack = 0) {
  const Real lo(fixed_string(iv.lower(), 80));
  const Real hi(fixed_string(iv.upper(), 80));
  return lo - slack <= v && v <= hi + slack;
}

std::string floor_scaled_frac_log2(std::uint64_t p, unsigned bits) {
  const Real f = oracle::frac(oracle::log2_real(p));
  return oracle::Int(floor(ldexp(f, static_cast<int>(bits)))).str(0, std::ios_base::hex);
}

// Independent high-precision route through MPFR's own log2 at generous
// precision, for widths beyond the Boost oracle's mantissa.
std::string mpfr_scaled_frac_log2(std::uint64_t p, unsigned bits) {
  mpfr_t x;
  mpfr_init2(x, bits * 2 + 256);
  mpfr_set_ui(x, p, MPFR_RNDN);
  mpfr_log2(x, x, MPFR_RNDN);
  mpfr_frac(x, x, MPFR_RNDN);
  mpfr_mul_2ui(x, x, bits, MPFR_RNDN);
  mpfr_floor(x, x);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), x, MPFR_RNDN);
  mpfr_clear(x);
  return z.get_str(16);
}

std::string strip0x(std::string s) {
  s = s.substr(2);
  const auto nz = s.find_first_not_of('0');
  return nz == std::string::npos ? "0" : s.substr(nz);
}

}  // namespace

TEST_CASE("log2_frac digit extraction of log2 3") {
  const FixedFraction f = log2_frac(3, 64);
  CHECK(f.hex() == "0x95c01a39fbd6879f");
  CHECK(f.error_ulps == 1);
  CHECK(f.decimal(18).substr(0, 20) == "0.584962500721156181");
}

TEST_CASE("log2_frac matches independent evaluations") {
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 9ULL, 11ULL, 101ULL, 1000000007ULL}) {
    for (unsigned bits : {64u, 128u, 192u, 256u}) {
      CHECK(strip0x(log2_frac(p, bits).hex()) == floor_scaled_frac_log2(p, bits));
    }
    for (unsigned bits : {512u, 1024u}) {
      CHECK(strip0x(log2_frac(p, bits).hex()) == mpfr_scaled_frac_log2(p, bits));
    }
  }
  CHECK(log2_frac(5, 64).decimal(4) == "0.3219");
}

TEST_CASE("log2_frac preconditions") {
  CHECK_THROWS_AS(log2_frac(4, 64), Error);
  CHECK_THROWS_AS(log2_frac(1, 64), Error);
  CHECK_THROWS_AS(log2_frac(3, 32), Error);
  try {
    log2_frac(3, kMaxPrecisionBits + 64);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PrecisionUnachievable);
  }
}

TEST_CASE("alpha_bound examples") {
  const PqSystem s31{3, 1};
  CHECK(encloses(alpha_bound(1, s31).value, Real(1) / 3));
  CHECK(encloses(alpha_bound(2, s31).value, 1 / (3 * (sqrt(Real(2)) - 1))));
  CHECK(alpha_bound(2, s31).value.midpoint_string(4) == "0.8047");
  CHECK(encloses(alpha_bound(1, PqSystem{5, 7}).value, Real(7) / 5));
  CHECK(alpha_bound(1, s31).value.width() < 1e-35);
}

TEST_CASE("alpha_bound is increasing in m") {
  const PqSystem s31{3, 1};
  Interval prev = alpha_bound(1, s31).value;
  for (std::uint64_t m = 2; m <= 1000000; m += (m < 20000 ? 1 : 997)) {
    Interval cur = alpha_bound(m, s31).value;
    REQUIRE(prev.certainly_less(cur));
    prev = cur;
  }
}

TEST_CASE("beta_bound examples") {
  auto oracle_beta = [](std::uint64_t m, std::uint64_t p, std::uint64_t q) {
    const Real f = oracle::frac(oracle::log2_real(p) * m);
    return Real(q) / (p * (pow(Real(2), (1 - f) / m) - 1));
  };
  const BoundValue b1 = beta_bound(1, PqSystem{3, 1});
  CHECK(encloses(b1.value, Real(1)));
  CHECK(b1.value.width() < 1e-30);
  CHECK(encloses(beta_bound(3, PqSystem{3, 5}).value, oracle_beta(3, 3, 5)));
  CHECK(beta_bound(3, PqSystem{3, 5}).value.midpoint_string(2) == "28.60");
  CHECK(encloses(beta_bound(3, PqSystem{5, 1}).value, oracle_beta(3, 5, 1)));
  CHECK(beta_bound(3, PqSystem{5, 1}).value.midpoint_string(1) == "25.2");
  for (std::uint64_t m : {2ULL, 7ULL, 53ULL, 665ULL, 15601ULL}) {
    CHECK(encloses(beta_bound(m, PqSystem{3, 1}).value, oracle_beta(m, 3, 1), 1e-20));
  }
}

TEST_CASE("beta_bound near frac(m log2 3) -> 1 is large but finite") {
  // frac(6586818670 log2 3) is within 1.5e-11 of 1.
  const BoundValue b = beta_bound(6586818670ULL, PqSystem{3, 1});
  CHECK(b.value.positive());
  CHECK(b.value.approx() > 1e20);
}

TEST_CASE("rhs_threshold examples") {
  const PqSystem s31{3, 1};
  const BigInt a = BigInt(19) * (BigInt(1) << 58) - 1;
  const BoundValue r = rhs_threshold(a, s31, 192);
  REQUIRE(r.value.common_floor().has_value());
  const Real ref = oracle::rhs(oracle::from_decimal(to_decimal(a)), 3, 1);
  CHECK(to_decimal(*r.value.common_floor()) == oracle::Int(floor(ref)).str());
  CHECK(to_decimal(*r.value.common_floor()) == "11387806137133615195");
  CHECK(fixed_string(r.value.lower(), 0).substr(0, 8) == "11387806");

  CHECK(encloses(rhs_threshold(1, s31).value, oracle::rhs(1, 3, 1)));
  CHECK(rhs_threshold(1, s31).value.midpoint_string(4) == "2.4094");

  const BoundValue one = rhs_threshold(1, PqSystem{3, 3});
  CHECK(one.value.is_point());
  CHECK(mpfr_cmp_ui(one.value.lower(), 1) == 0);
  CHECK_THROWS_AS(rhs_threshold(0, s31), Error);
}

TEST_CASE("float replay reproduces the 96-bit mantissa figure") {
  const BigInt a = BigInt(19) * (BigInt(1) << 58) - 1;
  const FloatReplay r96 = replay_rhs_threshold(a, PqSystem{3, 1}, 96);
  CHECK(to_decimal(r96.threshold_floor) == "11387806137299329586");
  // With a wide mantissa the replay converges to the certified threshold.
  const FloatReplay r256 = replay_rhs_threshold(a, PqSystem{3, 1}, 256);
  CHECK(to_decimal(r256.threshold_floor) == "11387806137133615195");
}

TEST_CASE("frac and floor of m log2 p") {
  for (std::uint64_t m : {1ULL, 2ULL, 3ULL, 65536ULL, 65537ULL, 6586818670ULL, 1ULL << 40}) {
    const Real x = oracle::log2_real(3) * m;
    CHECK(to_decimal(floor_m_log2p(m, 3)) == oracle::Int(floor(x)).str());
    CHECK(encloses(frac_m_log2p(m, 3, 128), oracle::frac(x), 1e-30));
  }
  CHECK(floor_m_log2p(5, 1) == 0);
}

TEST_CASE("sandwich window contains S_m of fixture cycles") {
  struct Fixture {
    PqSystem sys;
    std::uint64_t m, s_m, a_min;
  };
  for (const Fixture& f : {Fixture{{3, 5}, 3, 5, 19}, Fixture{{3, 5}, 3, 5, 23}, Fixture{{5, 1}, 3, 7, 13},
                           Fixture{{5, 1}, 3, 7, 17}, Fixture{{5, 1}, 2, 5, 1}}) {
    const Interval w = sandwich_window(f.m, f.a_min, f.sys);
    const Interval s = Interval::exact(f.s_m, 160);
    CHECK(w.positive());
    CHECK(mpfr_less_p(w.upper(), s.lower()) == 0);
    CHECK(mpfr_greater_p(w.lower(), s.lower()) == 0);
  }
}

TEST_CASE("interval arithmetic encloses and orders") {
  const Interval third = Interval::ratio(1, 3, 128);
  CHECK(mpfr_less_p(third.lower(), third.upper()));
  const Interval x = third * Interval::exact(std::uint64_t{3}, 128);
  CHECK(mpfr_cmp_ui(x.lower(), 1) <= 0);
  CHECK(mpfr_cmp_ui(x.upper(), 1) >= 0);
  CHECK(Interval::exact(std::uint64_t{1}, 64).certainly_less(Interval::exact(std::uint64_t{2}, 64)));
  CHECK_THROWS_AS(third / (third - third), Error);
  CHECK(Interval::exact(std::uint64_t{7}, 64).common_floor() == BigInt(7));
}
