#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

namespace modvis {

// P^1(Z/N): canonical representatives and O(1)-ish class lookup.
// The canonical form of (c:d) has c = gcd(c, N) and the least admissible d.
class P1Table {
 public:
  static P1Table build(long n);

  long level() const { return n_; }
  long size() const { return static_cast<long>(reps_.size()); }
  const std::vector<std::pair<long, long>>& reps() const { return reps_; }

  // Index of the class of (c:d); requires gcd(c, d, N) = 1.
  long index(long c, long d) const;

  static std::pair<long, long> normalize(long n, long c, long d);

 private:
  long n_ = 1;
  std::vector<std::pair<long, long>> reps_;
  std::unordered_map<long long, long> lookup_;
};

// |P^1(Z/N)| = N * prod_{q | N} (1 + 1/q).
long pone_size(long n);

}  // namespace modvis
