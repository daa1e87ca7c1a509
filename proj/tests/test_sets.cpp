#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <nwb/code.hpp>
#include <nwb/sets.hpp>

using namespace nwb;

TEST_CASE("enumerate") {
  CHECK(enumerate(SetDescriptor::evens(), 4) == FinSet{0, 2, 4, 6});
  CHECK(enumerate(SetDescriptor::arith(5, 2, {3}), 4) == FinSet{3, 5, 7, 9});
  CHECK(enumerate(SetDescriptor::cofinite(10, {1, 4}), 3) == FinSet{1, 4, 10});
  CHECK_THROWS_AS(enumerate(SetDescriptor::finite({1, 2}), 3), Error);
}

TEST_CASE("contains") {
  auto d = SetDescriptor::cofinite(10, {1, 4});
  CHECK(d.contains(4));
  CHECK(!d.contains(5));
  CHECK(d.contains(11));
  CHECK(!SetDescriptor::odds().contains(8));
  CHECK_THROWS_AS(SetDescriptor::cofinite(3, {1, 4}), Error);
}

TEST_CASE("thin") {
  Window w{30, 5};
  // intervals [0,3),[3,7),[7,12),[12,30)
  CHECK(thin(SetDescriptor::omega(), {0, 3, 7, 12}, 0, w) == FinSet{0, 7});
  CHECK(thin(SetDescriptor::omega(), {0, 3, 7, 12}, 1, w) == FinSet{3, 12});
  CHECK(thin(SetDescriptor::evens(), {1, 3, 7, 12}, 1, w) == FinSet{4, 12});
  CHECK_THROWS_AS(thin(SetDescriptor::finite({1}), {2, 5}, 0, w), Error);
}

TEST_CASE("text round trip") {
  for (std::string t : {"[1,4]+cofinite(10)", "[3]+arith(5,2)", "[1,2]", "cofinite(0)", "arith(1,2)", "empty"})
    CHECK(parse_desc(t).str() == t);
  CHECK(parse_desc("evens") == SetDescriptor::evens());
  CHECK(parse_desc("omega") == SetDescriptor::omega());
}

TEST_CASE("base periodicity agrees with direct membership") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    Base b;
    b.lo = rng() % 6;
    int parts = rng() % 3;
    for (int p = 0; p < parts; ++p) {
      int st = rng() % 7;
      int step = 1 + rng() % 3;
      FinSet pre;
      for (int x = 0; x < st; ++x)
        if (rng() % 2) pre.push_back(x);
      auto d = rng() % 4 ? SetDescriptor::arith(st, step, pre) : SetDescriptor::finite(pre);
      b.parts.push_back({d, static_cast<int>(rng() % 5) - 2});
    }
    for (int x = 0; x < 60; ++x) {
      std::optional<int> direct;
      for (int y = x; y < 200; ++y)
        if (b.contains(y)) {
          direct = y;
          break;
        }
      CHECK(b.next(x) == direct);
    }
  }
}
