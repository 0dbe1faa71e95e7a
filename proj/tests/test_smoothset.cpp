#include <numeric>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "smoothxyz/errors.hpp"
#include "smoothxyz/primes.hpp"
#include "smoothxyz/smoothset.hpp"

using namespace xyz;

TEST_SUITE_BEGIN("smoothset");

TEST_CASE("sieve matches the trial-division oracle") {
  auto s = sieve_smooth(30, 5);
  CHECK(s.count() == 18);
  CHECK(s.members().front() == 1);
  CHECK(s.members().back() == 30);
  CHECK(s.members() == oracle::smooth_set(30, 5));

  auto s2 = sieve_smooth(10, 2);
  CHECK(s2.members() == std::vector<std::uint64_t>{1, 2, 4, 8});

  auto s3 = sieve_smooth(7, 7);
  CHECK(s3.count() == 7);  // y >= x: everything is smooth

  for (std::uint64_t x : {1ull, 2ull, 97ull, 256ull, 1000ull})
    for (std::uint64_t y : {2ull, 3ull, 7ull, 50ull})
      CHECK(psi_exact(x, y) == oracle::psi(x, y));
}

TEST_CASE("parallel and serial sieves agree") {
  for (std::uint64_t x : {999ull, 100000ull, 1048576ull + 17}) {
    CHECK(psi_exact(x, 13) == psi_exact_serial(x, 13));
    CHECK(psi_exact(x, 997) == psi_exact_serial(x, 997));
  }
}

TEST_CASE("psi recurrence over prime powers") {
  auto primes = primes_up_to(50);
  std::vector<std::uint64_t> ps(primes.begin(), primes.end());
  for (std::uint64_t x : {100ull, 4999ull, 100000ull}) {
    CHECK(psi_exact(x, 50) == oracle::psi_recurrence(x, ps, ps.size()));
  }
}

TEST_CASE("psi monotone in x and y") {
  std::uint64_t prev_x = 0;
  for (std::uint64_t x = 10; x <= 200; x += 17) {
    std::uint64_t v = psi_exact(x, 7);
    CHECK(v >= prev_x);
    prev_x = v;
  }
  std::uint64_t prev_y = 0;
  for (std::uint64_t y = 2; y <= 60; ++y) {
    std::uint64_t v = psi_exact(500, y);
    CHECK(v >= prev_y);
    prev_y = v;
  }
}

TEST_CASE("largest prime factor") {
  CHECK(largest_prime_factor(12) == 3);
  CHECK(largest_prime_factor(1) == 1);
  CHECK(largest_prime_factor(97) == 97);
  CHECK(largest_prime_factor(2 * 3 * 5 * 7 * 11) == 11);
}

TEST_CASE("primitivity and pairwise coprimality") {
  CHECK(is_primitive({1, 1, 2}));
  CHECK(!is_primitive({2, 2, 4}));
  CHECK(!is_primitive({3, 6, 9}));
  // a prime dividing two of X, Y, Z divides the third
  for (std::uint64_t X = 1; X <= 60; ++X)
    for (std::uint64_t Y = X; X + Y <= 120; ++Y) {
      Triple t{X, Y, X + Y};
      if (is_primitive(t)) {
        CHECK(std::gcd(t.X, t.Y) == 1);
        CHECK(std::gcd(t.X, t.Z) == 1);
        CHECK(std::gcd(t.Y, t.Z) == 1);
      }
    }
}

TEST_CASE("budget is enforced") {
  SieveOptions opt;
  opt.max_x = 1000;
  CHECK_THROWS_AS(sieve_smooth(2000, 5, opt), budget_error);
}

TEST_CASE("serialization") {
  auto s = sieve_smooth(10, 2);
  std::ostringstream os;
  s.write_members_text(os);
  CHECK(os.str() == "1\n2\n4\n8\n");
  auto j = s.to_json();
  CHECK(j["x"] == 10);
  CHECK(j["y"] == 2);
  CHECK(j["count"] == 4);
  CHECK(j["members"].size() == 4);
  auto j2 = s.to_json(/*member_limit=*/2);
  CHECK(!j2.contains("members"));
}

TEST_SUITE_END();
