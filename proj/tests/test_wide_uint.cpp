#include <doctest.h>

#include <random>

#include "cyclebound/wide_uint.hpp"
#include "oracle.hpp"

using namespace cyclebound;

namespace {

template <std::size_t L>
oracle::Int as_int(const WideUint<L>& w) {
  oracle::Int r = 0;
  for (std::size_t i = L; i-- > 0;) r = (r << 64) + w.limb[i];
  return r;
}

template <std::size_t L>
WideUint<L> random_word(std::mt19937_64& rng) {
  WideUint<L> w;
  for (auto& x : w.limb) x = rng();
  // Skew toward small and boundary values now and then.
  switch (rng() % 8) {
    case 0: w = WideUint<L>::max(); break;
    case 1: w = WideUint<L>::from_u64(rng() % 4); break;
    default: break;
  }
  return w;
}

template <std::size_t L>
void exercise() {
  std::mt19937_64 rng(L * 97);
  const oracle::Int mod = oracle::Int(1) << (64 * L);
  const oracle::Int top = mod - 1;
  for (int i = 0; i < 20000; ++i) {
    const auto a = random_word<L>(rng);
    const auto b = random_word<L>(rng);
    const std::uint64_t m = (rng() % 3 == 0) ? rng() % 16 : rng();
    const oracle::Int A = as_int(a), B = as_int(b);

    CHECK(as_int(a + b) == (A + B) % mod);
    CHECK(as_int(a - b) == (A + mod - B) % mod);
    CHECK(as_int(a.negated()) == (mod - A) % mod);
    CHECK((a < b) == (A < B));
    CHECK((a == b) == (A == B));
    CHECK(as_int(a.mul_wrapping(m)) == (A * m) % mod);
    CHECK(as_int(a.mul_saturating(m)) == std::min<oracle::Int>(A * m, top));

    auto s = a;
    s.add_saturating(b);
    CHECK(as_int(s) == std::min<oracle::Int>(A + B, top));

    CHECK(WideUint<L>::from_big(a.to_big()) == a);
  }
}

}  // namespace

TEST_CASE("wide integer arithmetic agrees with cpp_int") {
  exercise<1>();
  exercise<2>();
  exercise<3>();
  exercise<4>();
}

TEST_CASE("from_big keeps the low bits") {
  mpz_class v = (mpz_class(1) << 130) + 5;
  CHECK(WideUint<2>::from_big(v) == WideUint<2>::from_u64(5));
}
