#pragma once

#include <map>
#include <vector>

#include "fluxtwin/coords.hpp"
#include "fluxtwin/errors.hpp"

namespace fluxtwin::twin {

// Word in the planar braid generators t_1 ... t_{n-1}. Letters are 1-based
// generator indices; t_i^2 = 1 and t_i t_j = t_j t_i for |i-j| >= 2.
struct TwinWord {
  int n = 2;
  std::vector<int> letters;

  TwinWord() = default;
  TwinWord(int strands, std::vector<int> w) : n(strands), letters(std::move(w)) {}
  void validate() const;
  std::size_t length() const { return letters.size(); }
};

TwinWord concat(const TwinWord& u, const TwinWord& v);

// Inverse word: generators are involutions, so reversing suffices.
TwinWord reversed(const TwinWord& w);

// Repeated word; negative exponents use the reversed word.
TwinWord word_power(const TwinWord& w, int exponent);

struct Permutation {
  std::vector<int> images;  // 0-based; slot s ends up at images[s]

  static Permutation identity(int n);
  bool is_identity() const;
  int n() const { return static_cast<int>(images.size()); }
  void validate() const;
};

// Geodesic normal form: delete t_i ... t_i pairs whose gap letters all
// commute with t_i, then bubble adjacent commuting letters into ascending
// order. Idempotent; preserves the induced permutation.
TwinWord reduce_word(const TwinWord& w);

// Image of the word under the surjection onto S_n; letters act left to right
// on slot positions.
Permutation induced_permutation(const TwinWord& w);

bool is_pure(const TwinWord& w);

struct TrajectoryGeometry {
  double spacing = 1.0;     // rest distance between adjacent slots
  double total_time = 1.0;  // trajectory spans [0, total_time]
};

// Strand trajectory of a word: strands start at equally spaced rest
// positions; each letter contributes one time slab in which the occupants of
// slots i, i+1 swap by linear interpolation while all others stay put.
coords::Trajectory word_to_trajectory(const TwinWord& w,
                                      const TrajectoryGeometry& geometry = {});

// Integer winding number of every particle triple along a closed trajectory.
std::map<coords::Triple, int> winding_numbers(const coords::Trajectory& traj,
                                              const coords::MassSystem& ms,
                                              double epsilon = coords::kDefaultEpsilon);

}  // namespace fluxtwin::twin
