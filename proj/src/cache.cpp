#include "collatz_lab/cache.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <iterator>
#include <mutex>
#include <sstream>
#include <string>
#include <string_view>

namespace collatz_lab {
namespace {

constexpr std::string_view kMagic = "collatz-lab-memo";
constexpr std::uint64_t kMaxTripleInput = (UINT64_MAX - 1) / 3;

bool parse_u64(std::string_view text, std::uint64_t& out) {
  if (text.empty() || text.size() > 20) return false;
  if (text.size() > 1 && text.front() == '0') return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool parse_field(std::string_view token, std::string_view key, std::uint64_t& out) {
  if (token.substr(0, key.size()) != key) return false;
  return parse_u64(token.substr(key.size()), out);
}

[[noreturn]] void corrupt(const std::filesystem::path& path, const std::string& why) {
  throw CacheCorruptError("corrupt memo file " + path.string() + ": " + why);
}

// Walk state shared by the 64-bit and big-integer loops.
struct Walk {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> visited;  // (value, step)
  std::uint64_t step = 0;
};

OrderIndex finish(Walk& walk, MemoTable& table, OrderIndex result) {
  if (!result.is_converged()) return result;
  std::vector<std::pair<std::uint64_t, MemoEntry>> batch;
  batch.reserve(walk.visited.size());
  for (const auto& [value, step] : walk.visited) {
    batch.emplace_back(value, MemoEntry{*result.tau - step, *result.ind});
  }
  table.insert_batch(batch);
  return result;
}

OrderIndex splice(std::uint64_t step, const MemoEntry& hit, std::uint64_t max_steps) {
  const std::uint64_t tau = step + hit.tau;
  if (tau > max_steps) return OrderIndex::cap_exceeded();
  return OrderIndex::converged(tau, hit.ind);
}

}  // namespace

MemoTable::MemoTable(std::uint64_t ceiling) : ceiling_(ceiling) {}

MemoTable::MemoTable(const MemoTable& other) : ceiling_(other.ceiling_) {
  std::shared_lock lock(other.mutex_);
  entries_ = other.entries_;
}

MemoTable& MemoTable::operator=(const MemoTable& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_);
  std::shared_lock other_lock(other.mutex_);
  ceiling_ = other.ceiling_;
  entries_ = other.entries_;
  return *this;
}

MemoTable::MemoTable(MemoTable&& other) noexcept : ceiling_(other.ceiling_) {
  std::scoped_lock lock(other.mutex_);
  entries_ = std::move(other.entries_);
}

MemoTable& MemoTable::operator=(MemoTable&& other) noexcept {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_, other.mutex_);
  ceiling_ = other.ceiling_;
  entries_ = std::move(other.entries_);
  return *this;
}

std::size_t MemoTable::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

std::optional<MemoEntry> MemoTable::lookup(std::uint64_t n) const {
  if (n >= ceiling_) return std::nullopt;
  std::shared_lock lock(mutex_);
  auto it = entries_.find(n);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void MemoTable::insert_batch(std::span<const std::pair<std::uint64_t, MemoEntry>> batch) {
  std::scoped_lock lock(mutex_);
  for (const auto& [n, entry] : batch) {
    if (n < ceiling_) entries_.insert_or_assign(n, entry);
  }
}

std::vector<std::pair<std::uint64_t, MemoEntry>> MemoTable::snapshot() const {
  std::vector<std::pair<std::uint64_t, MemoEntry>> out;
  {
    std::shared_lock lock(mutex_);
    out.assign(entries_.begin(), entries_.end());
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

bool operator==(const MemoTable& a, const MemoTable& b) {
  return a.ceiling() == b.ceiling() && a.snapshot() == b.snapshot();
}

OrderIndex order_index_memo(const Nat& a, std::uint64_t max_steps, MemoTable& table,
                            std::size_t max_bits) {
  if (sgn(a) <= 0) throw DomainError("order_index_memo: argument must be >= 1");
  if (max_steps == 0) throw DomainError("order_index_memo: max_steps must be >= 1");

  Walk walk;
  Nat big;
  if (auto small = to_u64(a)) {
    std::uint64_t v = *small;
    while (true) {
      if (auto k = is_power_of_two(v)) {
        if (v < table.ceiling()) walk.visited.emplace_back(v, walk.step);
        return finish(walk, table, OrderIndex::converged(walk.step, *k));
      }
      if (auto hit = table.lookup(v)) return finish(walk, table, splice(walk.step, *hit, max_steps));
      if (walk.step == max_steps) return OrderIndex::cap_exceeded();
      if (v < table.ceiling()) walk.visited.emplace_back(v, walk.step);
      if ((v & 1) == 0) {
        v >>= 1;
      } else if (v <= kMaxTripleInput) {
        v = 3 * v + 1;
      } else {
        break;
      }
      ++walk.step;
      if (static_cast<std::size_t>(std::bit_width(v)) > max_bits) {
        return OrderIndex::cap_exceeded();
      }
    }
    big = from_u64(v);
    big = 3 * big + 1;
    ++walk.step;
    if (bit_length(big) > max_bits) return OrderIndex::cap_exceeded();
  } else {
    big = a;
  }

  // Past 2^64 nothing is cacheable, so this is a plain walk until the orbit
  // drops back into 64-bit range.
  while (true) {
    if (auto k = is_power_of_two(big)) return finish(walk, table, OrderIndex::converged(walk.step, *k));
    if (auto small = to_u64(big)) {
      if (auto hit = table.lookup(*small)) {
        return finish(walk, table, splice(walk.step, *hit, max_steps));
      }
      if (*small < table.ceiling()) walk.visited.emplace_back(*small, walk.step);
    }
    if (walk.step == max_steps) return OrderIndex::cap_exceeded();
    big = collatz_f(big);
    ++walk.step;
    if (bit_length(big) > max_bits) return OrderIndex::cap_exceeded();
  }
}

void save(const MemoTable& table, const std::filesystem::path& destination) {
  const auto entries = table.snapshot();
  std::filesystem::path tmp = destination;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot open " + tmp.string() + " for writing");
    out << kMagic << " v" << kMemoFormatVersion << " ceiling=" << table.ceiling()
        << " entries=" << entries.size() << '\n';
    for (const auto& [n, e] : entries) out << n << ',' << e.tau << ',' << e.ind << '\n';
    out.flush();
    if (!out) throw CacheError("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, destination, ec);
  if (ec) throw CacheError("cannot replace " + destination.string() + ": " + ec.message());
}

MemoTable load(const std::filesystem::path& source) {
  std::ifstream in(source, std::ios::binary);
  if (!in) throw CacheError("cannot open " + source.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw CacheError("read of " + source.string() + " failed");

  if (text.empty()) corrupt(source, "empty file");
  if (text.back() != '\n') corrupt(source, "missing final newline (truncated?)");

  std::string_view rest(text);
  auto next_line = [&rest]() {
    const std::size_t nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest.remove_prefix(nl + 1);
    return line;
  };

  // Header.
  std::string_view header = next_line();
  std::vector<std::string_view> tokens;
  for (std::size_t pos = 0; pos <= header.size();) {
    std::size_t sp = header.find(' ', pos);
    if (sp == std::string_view::npos) sp = header.size();
    tokens.push_back(header.substr(pos, sp - pos));
    pos = sp + 1;
  }
  if (tokens.size() != 4 || tokens[0] != kMagic) corrupt(source, "bad header");
  std::uint64_t version = 0;
  if (tokens[1].size() < 2 || tokens[1][0] != 'v' || !parse_u64(tokens[1].substr(1), version)) {
    corrupt(source, "bad version tag");
  }
  if (version != kMemoFormatVersion) {
    throw CacheVersionError("memo file " + source.string() + " has format version " +
                            std::to_string(version) + "; this build reads version " +
                            std::to_string(kMemoFormatVersion));
  }
  std::uint64_t ceiling = 0;
  std::uint64_t count = 0;
  if (!parse_field(tokens[2], "ceiling=", ceiling) || ceiling == 0) corrupt(source, "bad ceiling");
  if (!parse_field(tokens[3], "entries=", count)) corrupt(source, "bad entry count");

  std::vector<std::pair<std::uint64_t, MemoEntry>> entries;
  entries.reserve(std::min<std::uint64_t>(count, 1u << 24));
  std::uint64_t line_no = 1;
  while (!rest.empty()) {
    ++line_no;
    std::string_view line = next_line();
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    std::uint64_t n = 0;
    MemoEntry e;
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos ||
        !parse_u64(line.substr(0, c1), n) || !parse_u64(line.substr(c1 + 1, c2 - c1 - 1), e.tau) ||
        !parse_u64(line.substr(c2 + 1), e.ind)) {
      corrupt(source, "malformed record on line " + std::to_string(line_no));
    }
    if (n == 0 || n >= ceiling) corrupt(source, "value out of range on line " + std::to_string(line_no));
    if (!entries.empty() && n <= entries.back().first) {
      corrupt(source, "records not strictly increasing at line " + std::to_string(line_no));
    }
    entries.emplace_back(n, e);
  }
  if (entries.size() != count) {
    corrupt(source, "header announces " + std::to_string(count) + " entries, found " +
                        std::to_string(entries.size()));
  }

  MemoTable table(ceiling);
  table.insert_batch(entries);
  return table;
}

std::vector<std::uint64_t> audit(const MemoTable& table, std::uint64_t max_steps) {
  std::vector<std::uint64_t> bad;
  for (const auto& [n, e] : table.snapshot()) {
    const OrderIndex fresh = order_index(from_u64(n), max_steps);
    if (!fresh.is_converged() || *fresh.tau != e.tau || *fresh.ind != e.ind) bad.push_back(n);
  }
  return bad;
}

}  // namespace collatz_lab
