#pragma once

// Persistent memo of converged (tau, Ind) pairs.
//
// File format, version 1 (text, LF line endings):
//
//   collatz-lab-memo v1 ceiling=<C> entries=<N>
//   <n>,<tau>,<ind>        (N lines, n strictly increasing, every n < C)
//
// Every line including the last ends in '\n'. Anything else is rejected.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "collatz_lab/core.hpp"
#include "collatz_lab/nat.hpp"

namespace collatz_lab {

inline constexpr std::uint64_t kDefaultMemoCeiling = std::uint64_t{1} << 32;
inline constexpr unsigned kMemoFormatVersion = 1;

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed, truncated or internally inconsistent cache file.
class CacheCorruptError : public CacheError {
 public:
  using CacheError::CacheError;
};

/// Cache file written by an unknown format version.
class CacheVersionError : public CacheError {
 public:
  using CacheError::CacheError;
};

struct MemoEntry {
  std::uint64_t tau = 0;
  std::uint64_t ind = 0;

  friend bool operator==(const MemoEntry&, const MemoEntry&) = default;
};

/// Thread-safe map n -> (tau, Ind) for n below the ceiling. Lookups take a
/// shared lock; insert_batch publishes a whole batch under one exclusive lock.
class MemoTable {
 public:
  explicit MemoTable(std::uint64_t ceiling = kDefaultMemoCeiling);
  MemoTable(const MemoTable& other);
  MemoTable& operator=(const MemoTable& other);
  MemoTable(MemoTable&& other) noexcept;
  MemoTable& operator=(MemoTable&& other) noexcept;

  std::uint64_t ceiling() const { return ceiling_; }
  unsigned version() const { return kMemoFormatVersion; }
  std::size_t size() const;

  std::optional<MemoEntry> lookup(std::uint64_t n) const;
  /// Entries at or above the ceiling are ignored.
  void insert_batch(std::span<const std::pair<std::uint64_t, MemoEntry>> batch);

  /// All entries sorted by n.
  std::vector<std::pair<std::uint64_t, MemoEntry>> snapshot() const;

  friend bool operator==(const MemoTable& a, const MemoTable& b);

 private:
  std::uint64_t ceiling_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::uint64_t, MemoEntry> entries_;
};

/// Same answer as order_index(a, max_steps, max_bits). The forward walk stops
/// at the first cached value and splices its (tau, Ind) with the step offset;
/// values visited on the way are published back to the table.
OrderIndex order_index_memo(const Nat& a, std::uint64_t max_steps, MemoTable& table,
                            std::size_t max_bits = kDefaultMaxBits);

/// Writes atomically (temporary file plus rename).
void save(const MemoTable& table, const std::filesystem::path& destination);

/// Throws CacheVersionError, CacheCorruptError, or CacheError when unreadable.
MemoTable load(const std::filesystem::path& source);

/// Entries whose stored value disagrees with a fresh order_index.
std::vector<std::uint64_t> audit(const MemoTable& table, std::uint64_t max_steps);

}  // namespace collatz_lab
