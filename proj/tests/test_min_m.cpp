#include <doctest.h>

#include "cyclebound/error.hpp"
#include "cyclebound/min_m.hpp"
#include "oracle.hpp"

using namespace cyclebound;

namespace {

const PqSystem k31{3, 1};

ScanConfig small_scan(unsigned workers = 1, std::uint64_t chunk = 1000) {
  ScanConfig c;
  c.workers = workers;
  c.chunk_size = chunk;
  return c;
}

}  // namespace

TEST_CASE("alpha search examples") {
  CHECK(min_m_alpha(1, k31).minimal_m == 3);
  CHECK(min_m_alpha(1, PqSystem{3, 3}).minimal_m == 2);
  // Certified threshold 11387806137133615195.266..., so the least m above it:
  const BigInt a = BigInt(19) * (BigInt(1) << 58) - 1;
  const MinMResult r = min_m_alpha(a, k31);
  CHECK(to_decimal(r.minimal_m) == "11387806137133615196");
  CHECK(r.precision_bits >= 192);
  CHECK(r.near_ties.empty());
  CHECK_THROWS_AS(min_m_alpha(0, k31), Error);
}

TEST_CASE("alpha search agrees with the oracle threshold") {
  for (unsigned long a : {1UL, 3UL, 97UL, 1009UL, 1048575UL, 123456789UL}) {
    for (const PqSystem& s : {k31, PqSystem{3, 5}, PqSystem{5, 1}}) {
      const oracle::Real r = oracle::rhs(a, s.p, s.q);
      const oracle::Int expected = oracle::Int(floor(r)) + 1;
      CHECK(to_decimal(min_m_alpha(BigInt(a), s).minimal_m) == expected.str());
    }
  }
}

TEST_CASE("alpha search is nondecreasing in a_min") {
  BigInt prev = 0;
  for (unsigned long a = 1; a < 3000; a += 2) {
    const BigInt m = min_m_alpha(BigInt(a), k31).minimal_m;
    REQUIRE(m >= prev);
    prev = m;
  }
}

TEST_CASE("beta scan at a_min = 1 settles the exact tie at m = 2") {
  // 2 / (1 - frac(2 log2 3)) = 1 / (2 - log2 3) = log 2 / log(4/3): equal to the
  // threshold, so m = 2 is rejected and m = 3 is the answer.
  const MinMResult r = min_m_beta_scan(1, k31, small_scan());
  CHECK(r.minimal_m == 3);
  REQUIRE(r.near_ties.size() == 1);
  CHECK(r.near_ties[0].m == 2);
  CHECK_FALSE(r.near_ties[0].accepted);
  CHECK(r.near_ties[0].exact);
  CHECK(r.near_ties[0].margin == "0");
}

TEST_CASE("beta scan equals the brute-force oracle") {
  // Oracle values frozen from an independent 256-bit per-m scan.
  CHECK(min_m_beta_scan(97, k31, small_scan()).minimal_m == 17);
  CHECK(min_m_beta_scan(1009, k31, small_scan()).minimal_m == 41);
  CHECK(min_m_beta_scan((1 << 20) - 1, k31, small_scan()).minimal_m == 2966);
  CHECK(min_m_beta_scan(12345, k31, small_scan()).minimal_m == 200);
  CHECK(min_m_beta_scan(19, PqSystem{3, 5}, small_scan()).minimal_m == 3);
  CHECK(min_m_beta_scan(101, PqSystem{3, 5}, small_scan()).minimal_m == 5);
  CHECK(min_m_beta_scan(1001, PqSystem{5, 1}, small_scan()).minimal_m == 59);
  CHECK(min_m_beta_scan(3, PqSystem{5, 7}, small_scan()).minimal_m == 2);

  // And live against the in-test oracle for a spread of inputs.
  for (unsigned long a : {1UL, 3UL, 5UL, 97UL, 1009UL, 65535UL, 1048575UL}) {
    for (const PqSystem& s : {k31, PqSystem{3, 5}, PqSystem{5, 1}, PqSystem{7, 3}}) {
      const std::uint64_t expected = oracle::beta_min_brute(a, s.p, s.q);
      CHECK_MESSAGE(min_m_beta_scan(BigInt(a), s, small_scan()).minimal_m == BigInt(static_cast<unsigned long>(expected)),
                    "a=" << a << " system " << s.label());
    }
  }
}

TEST_CASE("beta scan result is independent of precision, workers and chunking") {
  const BigInt a = (BigInt(1) << 30) - 1;
  const MinMResult base = min_m_beta_scan(a, k31, small_scan(1, 1 << 20));
  for (unsigned bits : {64u, 128u, 192u, 256u}) {
    for (unsigned w : {1u, 2u, 8u}) {
      for (std::uint64_t chunk : {997ULL, 65536ULL}) {
        ScanConfig c = small_scan(w, chunk);
        c.precision_bits = bits;
        const MinMResult r = min_m_beta_scan(a, k31, c);
        CHECK(r.minimal_m == base.minimal_m);
        if (bits == 128) CHECK(r.same_outcome(base));
      }
    }
  }
}

TEST_CASE("beta scan configuration errors") {
  ScanConfig c;
  c.precision_bits = 100;
  CHECK_THROWS_AS(min_m_beta_scan(97, k31, c), Error);
  c = ScanConfig{};
  c.chunk_size = 0;
  CHECK_THROWS_AS(min_m_beta_scan(97, k31, c), Error);
  c = ScanConfig{};
  c.max_m = 10;
  try {
    min_m_beta_scan(97, k31, c);
    FAIL("expected out-of-range");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfRange);
  }
}

TEST_CASE("beta scan reports progress per chunk") {
  std::vector<std::uint64_t> seen;
  ScanConfig c = small_scan(1, 10);
  c.progress = [&](std::uint64_t m) { seen.push_back(m); };
  const MinMResult r = min_m_beta_scan(97, k31, c);
  CHECK(r.minimal_m == 17);
  CHECK(seen == std::vector<std::uint64_t>{11, 21});
}

TEST_CASE("small thresholds short-circuit to m = 2") {
  CHECK(min_m_beta_scan(1, PqSystem{3, 3}).minimal_m == 2);
  CHECK(min_m_beta_scan(1, PqSystem{3, 5}).minimal_m == 2);
  CHECK(min_m_beta_scan(5, PqSystem{1, 1}).minimal_m == min_m_alpha(5, PqSystem{1, 1}).minimal_m);
}

TEST_CASE("decide_beta_condition at an exact tie") {
  const std::vector<unsigned> ladder{256, 512};
  const NearTie t = decide_beta_condition(2, 1, k31, ladder);
  CHECK_FALSE(t.accepted);
  CHECK(t.exact);
  const NearTie u = decide_beta_condition(3, 1, k31, ladder);
  CHECK(u.accepted);
  CHECK_FALSE(u.exact);
  CHECK(u.decided_at_bits == 256);
}
