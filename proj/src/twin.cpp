#include "fluxtwin/twin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fluxtwin::twin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool commute(int a, int b) { return std::abs(a - b) >= 2; }

}  // namespace

void TwinWord::validate() const {
  if (n < 2) throw InvalidWordError("strand count must be at least 2");
  for (int l : letters)
    if (l < 1 || l > n - 1)
      throw InvalidWordError("letter " + std::to_string(l) + " out of range for n=" +
                             std::to_string(n));
}

TwinWord concat(const TwinWord& u, const TwinWord& v) {
  if (u.n != v.n) throw InvalidWordError("cannot concatenate words on different strand counts");
  TwinWord out = u;
  out.letters.insert(out.letters.end(), v.letters.begin(), v.letters.end());
  return out;
}

TwinWord reversed(const TwinWord& w) {
  TwinWord out = w;
  std::reverse(out.letters.begin(), out.letters.end());
  return out;
}

TwinWord word_power(const TwinWord& w, int exponent) {
  const TwinWord base = exponent < 0 ? reversed(w) : w;
  TwinWord out{w.n, {}};
  for (int k = 0; k < std::abs(exponent); ++k)
    out.letters.insert(out.letters.end(), base.letters.begin(), base.letters.end());
  return out;
}

Permutation Permutation::identity(int n) {
  Permutation p;
  p.images.resize(n);
  for (int s = 0; s < n; ++s) p.images[s] = s;
  return p;
}

bool Permutation::is_identity() const {
  for (int s = 0; s < n(); ++s)
    if (images[s] != s) return false;
  return true;
}

void Permutation::validate() const {
  std::vector<bool> seen(images.size(), false);
  for (int v : images) {
    if (v < 0 || v >= n() || seen[v]) throw Error("not a permutation");
    seen[v] = true;
  }
}

TwinWord reduce_word(const TwinWord& w) {
  w.validate();
  std::vector<int> v = w.letters;

  // Deletion pass: a pair of equal letters whose gap commutes with them can
  // be cancelled (the word is geodesic once no such pair remains).
  bool shortened = true;
  while (shortened) {
    shortened = false;
    for (std::size_t i = 0; i < v.size() && !shortened; ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (v[j] == v[i]) {
          v.erase(v.begin() + static_cast<std::ptrdiff_t>(j));
          v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
          shortened = true;
          break;
        }
        if (!commute(v[j], v[i])) break;
      }
    }
  }

  // Commutation sort: swap adjacent commuting descending pairs to a fixpoint.
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      if (commute(v[i], v[i + 1]) && v[i] > v[i + 1]) {
        std::swap(v[i], v[i + 1]);
        swapped = true;
      }
    }
  }
  return TwinWord{w.n, std::move(v)};
}

Permutation induced_permutation(const TwinWord& w) {
  w.validate();
  Permutation p = Permutation::identity(w.n);
  for (int l : w.letters) {
    const int a = l - 1;
    for (int s = 0; s < w.n; ++s) {
      if (p.images[s] == a)
        p.images[s] = a + 1;
      else if (p.images[s] == a + 1)
        p.images[s] = a;
    }
  }
  return p;
}

bool is_pure(const TwinWord& w) { return induced_permutation(w).is_identity(); }

coords::Trajectory word_to_trajectory(const TwinWord& w, const TrajectoryGeometry& geometry) {
  w.validate();
  if (!(geometry.spacing > 0.0) || !(geometry.total_time > 0.0))
    throw InvalidGeometryError("spacing and total_time must be positive");

  const int n = w.n;
  const std::size_t slabs = std::max<std::size_t>(w.length(), 1);
  const double dt = geometry.total_time / static_cast<double>(slabs);

  // slot_of[s] = slot currently occupied by the strand that started at slot s
  std::vector<int> slot_of(n);
  for (int s = 0; s < n; ++s) slot_of[s] = s;

  auto snapshot = [&]() {
    std::vector<double> x(n);
    for (int s = 0; s < n; ++s) x[s] = geometry.spacing * slot_of[s];
    return coords::Configuration{std::move(x)};
  };

  coords::Trajectory traj;
  traj.t.push_back(0.0);
  traj.x.push_back(snapshot());
  if (w.letters.empty()) {
    traj.t.push_back(geometry.total_time);
    traj.x.push_back(snapshot());
    return traj;
  }
  for (std::size_t s = 0; s < w.length(); ++s) {
    const int a = w.letters[s] - 1;
    for (int q = 0; q < n; ++q) {
      if (slot_of[q] == a)
        slot_of[q] = a + 1;
      else if (slot_of[q] == a + 1)
        slot_of[q] = a;
    }
    traj.t.push_back(dt * static_cast<double>(s + 1));
    traj.x.push_back(snapshot());
  }
  return traj;
}

std::map<coords::Triple, int> winding_numbers(const coords::Trajectory& traj,
                                              const coords::MassSystem& ms,
                                              double epsilon) {
  traj.validate();
  if (ms.n() != traj.n()) throw Error("mass system and trajectory disagree on n");

  std::map<coords::Triple, int> out;
  for (const coords::Triple& tr : coords::all_triples(traj.n())) {
    // set-wise closure of the triple's strands
    std::array<double, 3> a{traj.x.front().x[tr.i], traj.x.front().x[tr.j],
                            traj.x.front().x[tr.k]};
    std::array<double, 3> b{traj.x.back().x[tr.i], traj.x.back().x[tr.j],
                            traj.x.back().x[tr.k]};
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double scale = 1.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    for (int q = 0; q < 3; ++q)
      if (std::abs(a[q] - b[q]) > 1e-9 * scale)
        throw InvalidLoopError("trajectory is not closed set-wise for a triple");

    const double delta = coords::unwrapped_angle_delta(ms, traj, tr, epsilon);
    const double turns = delta / kTwoPi;
    const double nearest = std::round(turns);
    if (std::abs(turns - nearest) > 1e-6)
      throw SamplingError("non-integer winding (" + std::to_string(turns) +
                          "); angle function not closed along this trajectory");
    out[tr] = static_cast<int>(nearest);
  }
  return out;
}

}  // namespace fluxtwin::twin
