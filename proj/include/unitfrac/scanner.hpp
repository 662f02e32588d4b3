#pragma once

// Range scans over n: per-n certificate search, Mordell exceptional-case
// analysis, interval coverage, and fixed-x perfect-square scans.

#include "unitfrac/decomposer.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <vector>

namespace unitfrac {

/// Search bounds. x runs over [floor(n/a) + 1, x_ceiling_factor * n) and,
/// for each x, t over [t_min, t_min + t_window) with
/// t_min = max(1, floor(2nx / (ax - n)^2)).
struct ScanConfig {
  std::uint64_t x_ceiling_factor = 10;
  std::uint64_t t_window = 100;
  /// When false, formula_two_search keeps scanning and reports the first
  /// hit for every x instead of only the first overall.
  bool stop_at_first = true;

  static ScanConfig paper_tables() { return {10, 100, true}; }
  static ScanConfig paper_coverage() { return {100, 100, true}; }

  void validate() const;  // throws std::invalid_argument

  friend bool operator==(const ScanConfig&, const ScanConfig&) = default;
};

struct RunOptions {
  unsigned jobs = 0;  // 0: hardware concurrency
  std::optional<std::filesystem::path> checkpoint;
};

struct CoverageReport {
  Natural a;
  Natural n_lo;
  Natural n_hi;
  std::vector<Certificate> captured;  // ascending n
  std::vector<Natural> recalcitrant;  // ascending
  Rational percent;                   // captured / total, as a fraction in [0, 1]

  std::size_t total() const { return captured.size() + recalcitrant.size(); }
};

struct MordellReport {
  Natural n_lo;
  Natural n_hi;
  std::vector<Natural> exceptional;
  std::vector<Certificate> verified;
  Rational percent;  // verified / exceptional; 0 when there are none
};

struct SquareHit {
  Natural t;
  Natural value;
  Natural root;

  friend bool operator==(const SquareHit&, const SquareHit&) = default;
};

/// n mod 840 in {1, 121, 169, 289, 361, 529}.
bool mordell_is_exception(const Natural& n);

std::optional<Certificate> formula_one_scan(const Instance& inst, const ScanConfig& cfg);
std::optional<Certificate> formula_two_scan(const Instance& inst, const ScanConfig& cfg);

/// Formula-two hits in scan order (x ascending, first t per x). One element
/// at most when cfg.stop_at_first.
std::vector<Certificate> formula_two_search(const Instance& inst, const ScanConfig& cfg);

CoverageReport coverage_scan(const Natural& a, const Natural& n_lo, const Natural& n_hi,
                             const ScanConfig& cfg, const RunOptions& run = {});

/// a = 4; formula_two_scan with cfg on every exceptional n in range.
MordellReport mordell_scan(const Natural& n_lo, const Natural& n_hi, const ScanConfig& cfg,
                           const RunOptions& run = {});

/// Every t in [t_lo, t_hi] where q_poly(x, t) is zero or a positive square.
std::vector<SquareHit> square_scan_fixed_x(const Instance& inst, const Natural& x,
                                           const Natural& t_lo, const Natural& t_hi);

/// One line of a checkpoint file: `n,status,x,y,z,t,q`.
struct CheckpointRecord {
  Natural n;
  std::optional<Certificate> cert;  // empty: recalcitrant

  std::string line() const;
};

/// Append-only log of completed n. The first line is a `#` header naming
/// the scan parameters; resuming against a different scan is an error.
class CheckpointLog {
 public:
  CheckpointLog(std::filesystem::path path, const Natural& a, const ScanConfig& cfg);

  /// Completed records by n. Captured records were re-verified on load.
  const std::map<Natural, CheckpointRecord>& completed() const noexcept { return done_; }
  void append(const CheckpointRecord& rec);

  static CheckpointRecord parse_line(std::string_view line, const Natural& a);

 private:
  std::filesystem::path path_;
  std::map<Natural, CheckpointRecord> done_;
};

}  // namespace unitfrac
