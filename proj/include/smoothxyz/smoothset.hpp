#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "json.hpp"

namespace xyz {

struct SieveOptions {
  std::uint64_t max_x = 100'000'000;  // memory budget on the sieve range
  std::uint64_t segment_size = 1u << 20;
  bool collect_members = true;
  bool parallel = true;
};

class SmoothSet;
namespace detail {
SmoothSet run_sieve(std::uint64_t x, std::uint64_t y, const SieveOptions& opt,
                    bool keep_bits, bool force_serial);
}

/// The y-smooth integers in [1, x]: a membership bitmap plus (optionally)
/// the sorted member list. Immutable after construction.
class SmoothSet {
 public:
  std::uint64_t x() const { return x_; }
  std::uint64_t y() const { return y_; }
  std::uint64_t count() const { return count_; }
  bool has_members() const { return has_members_; }

  bool contains(std::uint64_t n) const {
    if (n < 1 || n > x_) return false;
    return (bits_[n >> 6] >> (n & 63)) & 1u;
  }

  const std::vector<std::uint64_t>& members() const;

  /// Newline-delimited decimal members.
  void write_members_text(std::ostream& os) const;

  /// {x, y, count, members?}; members omitted when count > member_limit.
  nlohmann::json to_json(std::uint64_t member_limit = 1'000'000) const;

 private:
  friend SmoothSet detail::run_sieve(std::uint64_t, std::uint64_t,
                                     const SieveOptions&, bool, bool);
  std::uint64_t x_ = 0, y_ = 0, count_ = 0;
  bool has_members_ = false;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint64_t> members_;
};

/// Segmented residual-division sieve over [1, x] for smoothness bound y.
/// Deterministic output regardless of thread count.
SmoothSet sieve_smooth(std::uint64_t x, std::uint64_t y,
                       const SieveOptions& opt = {});

/// |{n <= x : n is y-smooth}| without retaining the set.
std::uint64_t psi_exact(std::uint64_t x, std::uint64_t y,
                        const SieveOptions& opt = {});

/// Single-threaded reference path (same algorithm, no OpenMP); kept for
/// equivalence tests and benchmarking.
std::uint64_t psi_exact_serial(std::uint64_t x, std::uint64_t y,
                               const SieveOptions& opt = {});

struct Triple {
  std::uint64_t X, Y, Z;  // X + Y = Z
};

/// gcd(X, Y, Z) == 1. For X+Y=Z this equals pairwise coprimality.
bool is_primitive(const Triple& t);

}  // namespace xyz
