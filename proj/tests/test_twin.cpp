#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <deque>
#include <random>
#include <set>

#include "fluxtwin/coords.hpp"
#include "fluxtwin/twin.hpp"

using namespace fluxtwin;
using coords::MassSystem;
using coords::Triple;
using twin::TwinWord;

namespace {

// Independent oracle: breadth-first search over the rewriting moves
// (adjacent-equal cancellation, distant commutation). Returns the set of all
// reachable letter sequences; cancellation only shrinks words, so the search
// is finite.
std::set<std::vector<int>> reachable_words(const TwinWord& w, std::size_t cap = 200000) {
  std::set<std::vector<int>> seen{w.letters};
  std::deque<std::vector<int>> queue{w.letters};
  while (!queue.empty() && seen.size() < cap) {
    const std::vector<int> cur = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      if (cur[i] == cur[i + 1]) {
        std::vector<int> next(cur.begin(), cur.end());
        next.erase(next.begin() + i, next.begin() + i + 2);
        if (seen.insert(next).second) queue.push_back(next);
      }
      if (std::abs(cur[i] - cur[i + 1]) >= 2) {
        std::vector<int> next = cur;
        std::swap(next[i], next[i + 1]);
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
  }
  return seen;
}

std::size_t shortest_reachable(const std::set<std::vector<int>>& words) {
  std::size_t best = SIZE_MAX;
  for (const auto& w : words) best = std::min(best, w.size());
  return best;
}

}  // namespace

TEST_CASE("word validation") {
  CHECK_THROWS_AS(TwinWord(3, {0}).validate(), InvalidWordError);
  CHECK_THROWS_AS(TwinWord(3, {3}).validate(), InvalidWordError);
  CHECK_THROWS_AS(TwinWord(1, {}).validate(), InvalidWordError);
  CHECK_NOTHROW(TwinWord(3, {1, 2, 1}).validate());
}

TEST_CASE("reduce_word fixed cases") {
  CHECK(twin::reduce_word(TwinWord{3, {1, 1}}).letters.empty());
  CHECK(twin::reduce_word(TwinWord{5, {1, 3, 1}}).letters == std::vector<int>{3});
  CHECK(twin::reduce_word(TwinWord{3, {1, 2, 1}}).letters == std::vector<int>{1, 2, 1});
  CHECK(twin::reduce_word(TwinWord{5, {4, 1}}).letters == std::vector<int>{1, 4});
  CHECK(twin::reduce_word(TwinWord{6, {5, 3, 1, 3}}).letters == std::vector<int>{1, 5});
}

TEST_CASE("reduce_word against the BFS oracle") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> strand_count(2, 5);
  std::uniform_int_distribution<int> word_length(0, 10);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = strand_count(rng);
    std::uniform_int_distribution<int> letter(1, n - 1);
    TwinWord w{n, {}};
    const int l = word_length(rng);
    for (int q = 0; q < l; ++q) w.letters.push_back(letter(rng));

    const TwinWord r = twin::reduce_word(w);
    const auto reachable = reachable_words(w);
    CHECK(r.length() == shortest_reachable(reachable));
    CHECK(reachable.count(r.letters) == 1);
    CHECK(twin::induced_permutation(r).images == twin::induced_permutation(w).images);
    CHECK(twin::reduce_word(r).letters == r.letters);
  }
}

TEST_CASE("induced permutation") {
  const twin::Permutation single = twin::induced_permutation(TwinWord{3, {1}});
  CHECK(single.images == std::vector<int>{1, 0, 2});

  CHECK(twin::induced_permutation(TwinWord{3, {1, 2, 1, 2, 1, 2}}).is_identity());
  CHECK(twin::induced_permutation(TwinWord{4, {}}).is_identity());

  // composition convention: letters act left to right on slot positions
  const twin::Permutation two = twin::induced_permutation(TwinWord{3, {1, 2}});
  // strand 0: slot 0 -> 1 -> 2; strand 1: 1 -> 0; strand 2: 2 -> 1
  CHECK(two.images == std::vector<int>{2, 0, 1});
}

TEST_CASE("purity") {
  CHECK(twin::is_pure(TwinWord{3, {1, 2, 1, 2, 1, 2}}));
  CHECK_FALSE(twin::is_pure(TwinWord{3, {1}}));
  CHECK(twin::is_pure(TwinWord{3, {1, 1}}));
  CHECK(twin::is_pure(TwinWord{3, {}}));
}

TEST_CASE("word_to_trajectory") {
  const coords::Trajectory still = twin::word_to_trajectory(TwinWord{3, {}});
  CHECK(still.size() == 2);
  CHECK(still.x.front().x == still.x.back().x);

  const coords::Trajectory cross = twin::word_to_trajectory(TwinWord{2, {1}});
  CHECK(cross.x.front().x == std::vector<double>{0.0, 1.0});
  CHECK(cross.x.back().x == std::vector<double>{1.0, 0.0});

  const coords::Trajectory braid =
      twin::word_to_trajectory(TwinWord{3, {1, 2, 1, 2, 1, 2}});
  CHECK(braid.is_closed());
  const MassSystem ms({1.0, 1.0, 1.0});
  CHECK(coords::min_triple_radius(ms, braid) > 0.1);

  CHECK_THROWS_AS(twin::word_to_trajectory(TwinWord{3, {1}}, {-1.0, 1.0}),
                  InvalidGeometryError);
  CHECK_THROWS_AS(twin::word_to_trajectory(TwinWord{3, {1}}, {1.0, 0.0}),
                  InvalidGeometryError);
}

TEST_CASE("winding numbers") {
  const MassSystem equal({1.0, 1.0, 1.0});
  const Triple t{0, 1, 2};

  const auto none = twin::winding_numbers(twin::word_to_trajectory(TwinWord{3, {}}), equal);
  CHECK(none.at(t) == 0);

  const TwinWord gen{3, {1, 2}};
  const auto one =
      twin::winding_numbers(twin::word_to_trajectory(twin::word_power(gen, 3)), equal);
  CHECK(one.at(t) == 1);

  const auto two =
      twin::winding_numbers(twin::word_to_trajectory(twin::word_power(gen, 6)), equal);
  CHECK(two.at(t) == 2);

  const auto minus =
      twin::winding_numbers(twin::word_to_trajectory(twin::word_power(gen, -3)), equal);
  CHECK(minus.at(t) == -1);

  // mass independence of the topological winding
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> mass(0.2, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const MassSystem ms({mass(rng), mass(rng), mass(rng)});
    const auto w = twin::winding_numbers(twin::word_to_trajectory(twin::word_power(gen, 3)), ms);
    CHECK(w.at(t) == 1);
  }

  // a single transposition closes set-wise but the angle does not return
  CHECK_THROWS_AS(twin::winding_numbers(twin::word_to_trajectory(TwinWord{3, {1}}), equal),
                  SamplingError);
  // a swap on the far side drags a strand of the first triple to a new slot
  CHECK_THROWS_AS(
      twin::winding_numbers(twin::word_to_trajectory(TwinWord{4, {3}}), MassSystem({1, 1, 1, 1})),
      InvalidLoopError);
}

TEST_CASE("winding additivity and reversal") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> mass(0.2, 3.0);
  const TwinWord gen{3, {1, 2}};
  const MassSystem ms({mass(rng), mass(rng), mass(rng)});
  const Triple t{0, 1, 2};
  for (int a = -2; a <= 2; ++a) {
    for (int b = -2; b <= 2; ++b) {
      const TwinWord u = twin::word_power(gen, 3 * a);
      const TwinWord v = twin::word_power(gen, 3 * b);
      const auto wu = twin::winding_numbers(twin::word_to_trajectory(u), ms);
      const auto wv = twin::winding_numbers(twin::word_to_trajectory(v), ms);
      const auto wuv = twin::winding_numbers(twin::word_to_trajectory(twin::concat(u, v)), ms);
      CHECK(wuv.at(t) == wu.at(t) + wv.at(t));
      const auto wr = twin::winding_numbers(twin::word_to_trajectory(twin::reversed(u)), ms);
      CHECK(wr.at(t) == -wu.at(t));
    }
  }
}
