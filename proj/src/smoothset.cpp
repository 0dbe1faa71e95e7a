#include "smoothxyz/smoothset.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

#include "smoothxyz/errors.hpp"
#include "smoothxyz/primes.hpp"

namespace xyz {

namespace {

struct SegmentResult {
  std::uint64_t count = 0;
  std::vector<std::uint64_t> members;
};

void check_args(std::uint64_t x, std::uint64_t y, const SieveOptions& opt) {
  if (x < 1) throw std::invalid_argument("sieve_smooth: x must be >= 1");
  if (y < 2) throw std::invalid_argument("sieve_smooth: y must be >= 2");
  if (x > opt.max_x)
    throw budget_error("sieve_smooth: x exceeds memory budget (max_x)");
}

// Marks the y-smooth integers of [lo, hi] (inclusive) into bits, collecting
// members when requested. residual[] is scratch of size >= hi-lo+1.
SegmentResult sieve_segment(std::uint64_t lo, std::uint64_t hi,
                            const std::vector<std::uint32_t>& primes,
                            std::vector<std::uint64_t>& residual,
                            std::vector<std::uint64_t>* bits,
                            bool collect) {
  std::uint64_t len = hi - lo + 1;
  for (std::uint64_t i = 0; i < len; ++i) residual[i] = lo + i;
  if (lo == 0) residual[0] = 1;  // n=0 never emitted; keep slot inert
  for (std::uint32_t p : primes) {
    std::uint64_t first = ((lo + p - 1) / p) * p;
    if (first < p) first = p;
    for (std::uint64_t m = first; m <= hi; m += p) {
      std::uint64_t& r = residual[m - lo];
      while (r % p == 0) r /= p;
    }
  }
  SegmentResult out;
  for (std::uint64_t i = (lo == 0 ? 1 : 0); i < len; ++i) {
    if (residual[i] == 1) {
      std::uint64_t n = lo + i;
      ++out.count;
      if (bits) (*bits)[n >> 6] |= 1ull << (n & 63);
      if (collect) out.members.push_back(n);
    }
  }
  return out;
}

}  // namespace

namespace detail {

// Shared driver for counting / full construction.
SmoothSet run_sieve(std::uint64_t x, std::uint64_t y, const SieveOptions& opt,
                    bool keep_bits, bool force_serial) {
  check_args(x, y, opt);
  auto primes = primes_up_to(std::min(x, y));
  SmoothSet s;
  s.x_ = x;
  s.y_ = y;
  if (keep_bits) s.bits_.assign((x >> 6) + 1, 0);

  std::uint64_t seg = std::max<std::uint64_t>(opt.segment_size, 1u << 12);
  seg = (seg + 63) & ~std::uint64_t{63};  // segments never share a bit word
  std::uint64_t nseg = (x + seg - 1) / seg;
  std::vector<SegmentResult> results(nseg);

  bool parallel = opt.parallel && !force_serial;
#pragma omp parallel if (parallel)
  {
    std::vector<std::uint64_t> scratch(seg);
#pragma omp for schedule(dynamic)
    for (std::int64_t si = 0; si < static_cast<std::int64_t>(nseg); ++si) {
      std::uint64_t lo = static_cast<std::uint64_t>(si) * seg;
      std::uint64_t hi = std::min(x, lo + seg - 1);
      if (lo == 0) lo = 1;
      results[static_cast<std::size_t>(si)] =
          sieve_segment(lo, hi, primes, scratch,
                        keep_bits ? &s.bits_ : nullptr, opt.collect_members);
    }
  }

  for (auto& r : results) {
    s.count_ += r.count;
    if (opt.collect_members)
      s.members_.insert(s.members_.end(), r.members.begin(), r.members.end());
  }
  s.has_members_ = opt.collect_members;
  return s;
}

}  // namespace detail

SmoothSet sieve_smooth(std::uint64_t x, std::uint64_t y,
                       const SieveOptions& opt) {
  return detail::run_sieve(x, y, opt, /*keep_bits=*/true,
                           /*force_serial=*/false);
}

std::uint64_t psi_exact(std::uint64_t x, std::uint64_t y,
                        const SieveOptions& opt) {
  SieveOptions o = opt;
  o.collect_members = false;
  return detail::run_sieve(x, y, o, /*keep_bits=*/false,
                           /*force_serial=*/false)
      .count();
}

std::uint64_t psi_exact_serial(std::uint64_t x, std::uint64_t y,
                               const SieveOptions& opt) {
  SieveOptions o = opt;
  o.collect_members = false;
  return detail::run_sieve(x, y, o, /*keep_bits=*/false, /*force_serial=*/true)
      .count();
}

const std::vector<std::uint64_t>& SmoothSet::members() const {
  if (!has_members_)
    throw std::logic_error("SmoothSet: members were not collected");
  return members_;
}

void SmoothSet::write_members_text(std::ostream& os) const {
  for (std::uint64_t n : members()) os << n << '\n';
}

nlohmann::json SmoothSet::to_json(std::uint64_t member_limit) const {
  nlohmann::json j;
  j["x"] = x_;
  j["y"] = y_;
  j["count"] = count_;
  if (has_members_ && count_ <= member_limit) j["members"] = members_;
  return j;
}

bool is_primitive(const Triple& t) {
  if (t.X < 1 || t.Y < 1 || t.X + t.Y != t.Z)
    throw std::invalid_argument("is_primitive: not a valid X+Y=Z triple");
  return std::gcd(std::gcd(t.X, t.Y), t.Z) == 1;
}

}  // namespace xyz
