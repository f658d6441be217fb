#include "ballotree/tournament.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdlib>
#include <random>
#include <sstream>

namespace ballotree {

namespace {

constexpr std::array<std::uint8_t, 256> make_rev8() {
  std::array<std::uint8_t, 256> t{};
  for (int i = 0; i < 256; ++i) {
    std::uint8_t r = 0;
    for (int b = 0; b < 8; ++b)
      if (i & (1 << b)) r |= std::uint8_t(0x80 >> b);
    t[i] = r;
  }
  return t;
}

const std::array<std::uint8_t, 256> kRev8 = make_rev8();

std::uint64_t reverse_bits(std::uint64_t x, unsigned width) {
  std::uint64_t r = 0;
  for (int i = 0; i < 8; ++i) {
    r = (r << 8) | kRev8[(x >> (i * 8)) & 0xff];
  }
  return r >> (64 - width);
}

std::vector<Candidate> parse_candidate_list(std::string_view s) {
  std::vector<Candidate> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string_view item = s.substr(pos, comma == std::string_view::npos
                                              ? std::string_view::npos
                                              : comma - pos);
    int value = 0;
    auto [ptr, ec] =
        std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size())
      throw format_error("bad candidate list item '" + std::string(item) + "'");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<bool> parse_bit_list(std::string_view s) {
  std::vector<bool> out;
  out.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw format_error("bad orientation bit");
    out.push_back(c == '1');
  }
  return out;
}

std::string join_candidates(const std::vector<Candidate>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string join_bits(const std::vector<bool>& v) {
  std::string out;
  out.reserve(v.size());
  for (bool b : v) out += b ? '1' : '0';
  return out;
}

}  // namespace

Tournament::Tournament(int n) : n_(n) {
  if (n < 1) throw domain_error("tournament needs at least one vertex");
  words_.assign((pair_count(n) + 63) / 64, 0);
}

Tournament Tournament::from_bits(int n, std::string_view bits) {
  Tournament t(n);
  if (bits.size() != pair_count(n))
    throw format_error("expected " + std::to_string(pair_count(n)) +
                       " orientation bits, got " + std::to_string(bits.size()));
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] == '1')
      t.set_bit(j, true);
    else if (bits[j] != '0')
      throw format_error("orientation bits must be '0' or '1'");
  }
  return t;
}

Tournament Tournament::from_index(int n, std::uint64_t index) {
  Tournament t(n);
  t.assign_index(index);
  return t;
}

void Tournament::assign_index(std::uint64_t index) {
  std::uint64_t m = pair_count(n_);
  if (m > 63) throw scale_error("index enumeration supports at most 63 pairs");
  if (m == 0) return;
  words_[0] = reverse_bits(index, unsigned(m));
}

void Tournament::check_candidate(Candidate c) const {
  if (c < 0 || c >= n_)
    throw domain_error("candidate " + std::to_string(c) +
                       " out of range for n=" + std::to_string(n_));
}

bool Tournament::beats(Candidate u, Candidate v) const {
  check_candidate(u);
  check_candidate(v);
  return beats_unchecked(u, v);
}

int Tournament::out_degree(Candidate v) const {
  check_candidate(v);
  int d = 0;
  for (int u = 0; u < n_; ++u)
    if (u != v && beats_unchecked(v, u)) ++d;
  return d;
}

int Tournament::max_out_degree() const {
  int best = 0;
  for (int v = 0; v < n_; ++v) best = std::max(best, out_degree(v));
  return best;
}

std::vector<Candidate> Tournament::copeland_winners() const {
  int best = max_out_degree();
  std::vector<Candidate> winners;
  for (int v = 0; v < n_; ++v)
    if (out_degree(v) == best) winners.push_back(v);
  return winners;
}

std::string Tournament::bits() const {
  std::uint64_t m = pair_count(n_);
  std::string out(m, '0');
  for (std::uint64_t p = 0; p < m; ++p)
    if (get_bit(p)) out[p] = '1';
  return out;
}

std::uint64_t Tournament::index() const {
  std::uint64_t m = pair_count(n_);
  if (m > 63) throw scale_error("index enumeration supports at most 63 pairs");
  if (m == 0) return 0;
  return reverse_bits(words_[0] & ((std::uint64_t(1) << m) - 1), unsigned(m));
}

std::string Tournament::to_text() const {
  return "n=" + std::to_string(n_) + "\n" + bits() + "\n";
}

Tournament Tournament::parse(std::string_view text) {
  std::size_t eol = text.find('\n');
  std::string_view first =
      eol == std::string_view::npos ? text : text.substr(0, eol);
  if (first.substr(0, 2) != "n=")
    throw format_error("tournament text must start with 'n=<count>'");
  int n = 0;
  auto [ptr, ec] =
      std::from_chars(first.data() + 2, first.data() + first.size(), n);
  if (ec != std::errc() || ptr != first.data() + first.size() || n < 1)
    throw format_error("bad vertex count in tournament text");
  if (eol == std::string_view::npos) {
    if (pair_count(n) == 0) return Tournament(n);
    throw format_error("missing orientation bit line");
  }
  std::string_view rest = text.substr(eol + 1);
  std::size_t eol2 = rest.find('\n');
  std::string_view bits =
      eol2 == std::string_view::npos ? rest : rest.substr(0, eol2);
  return from_bits(n, bits);
}

void Tournament::set_edge(Candidate u, Candidate v) {
  check_candidate(u);
  check_candidate(v);
  if (u == v) throw domain_error("no self edges");
  if (u < v)
    set_bit(pair_index(u, v), true);
  else
    set_bit(pair_index(v, u), false);
}

const Tournament& direction_tournament(Direction d) {
  static const Tournament clockwise = Tournament::from_bits(3, "101");
  static const Tournament counterclockwise = Tournament::from_bits(3, "010");
  return d == Direction::clockwise ? clockwise : counterclockwise;
}

void PerfectManipulatorSpec::validate() const {
  int n = size();
  if (members_b.empty()) throw domain_error("B must be nonempty");
  if (members_c.empty()) throw domain_error("C must be nonempty");
  std::vector<bool> seen(n, false);
  auto mark = [&](Candidate c) {
    if (c < 0 || c >= n)
      throw domain_error("member " + std::to_string(c) + " out of range");
    if (seen[c]) throw domain_error("member " + std::to_string(c) + " repeated");
    seen[c] = true;
  };
  mark(alpha);
  for (Candidate c : members_b) mark(c);
  for (Candidate c : members_c) mark(c);
  if (!std::is_sorted(members_b.begin(), members_b.end()) ||
      !std::is_sorted(members_c.begin(), members_c.end()))
    throw domain_error("member lists must be sorted ascending");
  if (inner_b.size() != pair_count(int(members_b.size())))
    throw domain_error("innerB bit count mismatch");
  if (inner_c.size() != pair_count(int(members_c.size())))
    throw domain_error("innerC bit count mismatch");
}

std::string PerfectManipulatorSpec::to_text() const {
  std::string out = "alpha=" + std::to_string(alpha);
  out += "; B=" + join_candidates(members_b);
  out += "; C=" + join_candidates(members_c);
  out += "; innerB=" + join_bits(inner_b);
  out += "; innerC=" + join_bits(inner_c);
  return out;
}

PerfectManipulatorSpec PerfectManipulatorSpec::parse(std::string_view text) {
  PerfectManipulatorSpec spec;
  bool have[5] = {false, false, false, false, false};
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t semi = text.find(';', pos);
    std::string_view field = text.substr(
        pos, semi == std::string_view::npos ? std::string_view::npos
                                            : semi - pos);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\n'))
      field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\n'))
      field.remove_suffix(1);
    if (!field.empty()) {
      std::size_t eq = field.find('=');
      if (eq == std::string_view::npos)
        throw format_error("expected key=value in pm spec text");
      std::string_view key = field.substr(0, eq);
      std::string_view value = field.substr(eq + 1);
      if (key == "alpha") {
        auto list = parse_candidate_list(value);
        if (list.size() != 1) throw format_error("alpha must be one candidate");
        spec.alpha = list[0];
        have[0] = true;
      } else if (key == "B") {
        spec.members_b = parse_candidate_list(value);
        std::sort(spec.members_b.begin(), spec.members_b.end());
        have[1] = true;
      } else if (key == "C") {
        spec.members_c = parse_candidate_list(value);
        std::sort(spec.members_c.begin(), spec.members_c.end());
        have[2] = true;
      } else if (key == "innerB") {
        spec.inner_b = parse_bit_list(value);
        have[3] = true;
      } else if (key == "innerC") {
        spec.inner_c = parse_bit_list(value);
        have[4] = true;
      } else {
        throw format_error("unknown pm spec field '" + std::string(key) + "'");
      }
    }
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  for (bool h : have)
    if (!h) throw format_error("pm spec text missing a field");
  spec.validate();
  return spec;
}

void realize_pm_into(const PerfectManipulatorSpec& spec, Tournament& out) {
  if (out.size() != spec.size())
    throw domain_error("target tournament size mismatch");
  for (Candidate b : spec.members_b) out.set_edge(spec.alpha, b);
  for (Candidate c : spec.members_c) out.set_edge(c, spec.alpha);
  for (Candidate b : spec.members_b)
    for (Candidate c : spec.members_c) out.set_edge(b, c);
  std::size_t j = 0;
  for (std::size_t x = 0; x < spec.members_b.size(); ++x)
    for (std::size_t y = x + 1; y < spec.members_b.size(); ++y, ++j) {
      if (spec.inner_b[j])
        out.set_edge(spec.members_b[x], spec.members_b[y]);
      else
        out.set_edge(spec.members_b[y], spec.members_b[x]);
    }
  j = 0;
  for (std::size_t x = 0; x < spec.members_c.size(); ++x)
    for (std::size_t y = x + 1; y < spec.members_c.size(); ++y, ++j) {
      if (spec.inner_c[j])
        out.set_edge(spec.members_c[x], spec.members_c[y]);
      else
        out.set_edge(spec.members_c[y], spec.members_c[x]);
    }
}

Tournament realize_pm(const PerfectManipulatorSpec& spec) {
  spec.validate();
  Tournament t(spec.size());
  realize_pm_into(spec, t);
  return t;
}

int exhaustive_limit() {
  if (const char* env = std::getenv("BALLOTREE_EXHAUSTIVE_LIMIT")) {
    int value = std::atoi(env);
    if (value >= 1) return value;
  }
  return 8;
}

std::uint64_t tournament_count(int n) {
  std::uint64_t m = pair_count(n);
  if (m > 63)
    throw scale_error("2^" + std::to_string(m) +
                      " tournaments cannot be enumerated");
  return std::uint64_t(1) << m;
}

TournamentEnumeration::TournamentEnumeration(int n, int limit) : n_(n) {
  if (n > limit)
    throw scale_error("exhaustive enumeration refused for n=" +
                      std::to_string(n) + " (limit " + std::to_string(limit) +
                      "; set BALLOTREE_EXHAUSTIVE_LIMIT to force)");
  count_ = tournament_count(n);
}

TournamentEnumeration enumerate_tournaments(int n) {
  return TournamentEnumeration(n);
}

TournamentEnumeration enumerate_tournaments(int n, int limit) {
  return TournamentEnumeration(n, limit);
}

PmIndexer::PmIndexer(int n) : n_(n) {
  if (n < 3) throw domain_error("perfect manipulator tournaments need n >= 3");
  if (pair_count(n - 2) > 62)
    throw scale_error("perfect manipulator enumeration at n=" +
                      std::to_string(n) + " does not fit 63-bit indices");
  std::uint64_t running = 0;
  std::uint32_t full = (std::uint32_t(1) << (n - 1)) - 1;
  for (std::uint32_t alpha = 0; alpha < std::uint32_t(n); ++alpha) {
    for (std::uint32_t bmask = 1; bmask < full; ++bmask) {
      int b = __builtin_popcount(bmask);
      int c = (n - 1) - b;
      blocks_.push_back({alpha, bmask, running});
      std::uint64_t block_size = std::uint64_t(1)
                                 << (pair_count(b) + pair_count(c));
      if (running + block_size < running)
        throw scale_error("perfect manipulator enumeration at n=" +
                          std::to_string(n) + " does not fit 63-bit indices");
      running += block_size;
    }
  }
  total_ = running;
}

void PmIndexer::fill(std::uint64_t index, PerfectManipulatorSpec& out) const {
  if (index >= total_) throw domain_error("pm spec index out of range");
  // last block whose first index is <= index
  std::size_t lo = 0, hi = blocks_.size();
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (blocks_[mid].first <= index)
      lo = mid;
    else
      hi = mid;
  }
  const Block& block = blocks_[lo];
  out.alpha = Candidate(block.alpha);
  out.members_b.clear();
  out.members_c.clear();
  int slot = 0;
  for (int v = 0; v < n_; ++v) {
    if (v == out.alpha) continue;
    if (block.bmask & (1u << slot))
      out.members_b.push_back(v);
    else
      out.members_c.push_back(v);
    ++slot;
  }
  std::uint64_t rem = index - block.first;
  std::uint64_t nb = pair_count(int(out.members_b.size()));
  std::uint64_t nc = pair_count(int(out.members_c.size()));
  out.inner_b.assign(nb, false);
  out.inner_c.assign(nc, false);
  for (std::uint64_t j = 0; j < nb; ++j)
    out.inner_b[j] = (rem >> j) & 1;
  for (std::uint64_t j = 0; j < nc; ++j)
    out.inner_c[j] = (rem >> (nb + j)) & 1;
}

PerfectManipulatorSpec PmIndexer::spec_at(std::uint64_t index) const {
  PerfectManipulatorSpec spec;
  fill(index, spec);
  return spec;
}

PerfectManipulatorSpec sample_pm(int n, std::uint64_t seed) {
  if (n < 3) throw domain_error("perfect manipulator tournaments need n >= 3");
  std::mt19937_64 rng(seed);
  PerfectManipulatorSpec spec;
  std::uniform_int_distribution<int> pick_alpha(0, n - 1);
  spec.alpha = pick_alpha(rng);
  for (;;) {
    spec.members_b.clear();
    spec.members_c.clear();
    for (int v = 0; v < n; ++v) {
      if (v == spec.alpha) continue;
      if (rng() & 1)
        spec.members_b.push_back(v);
      else
        spec.members_c.push_back(v);
    }
    if (!spec.members_b.empty() && !spec.members_c.empty()) break;
  }
  auto draw_bits = [&](std::size_t count) {
    std::vector<bool> bits(count);
    for (std::size_t j = 0; j < count; ++j) bits[j] = rng() & 1;
    return bits;
  };
  spec.inner_b = draw_bits(pair_count(int(spec.members_b.size())));
  spec.inner_c = draw_bits(pair_count(int(spec.members_c.size())));
  return spec;
}

Tournament sample_tournament(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tournament t(n);
  std::uint64_t m = pair_count(n);
  std::string bits(m, '0');
  for (std::uint64_t j = 0; j < m; ++j) bits[j] = (rng() & 1) ? '1' : '0';
  return Tournament::from_bits(n, bits);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
  // splitmix64 finalizer over the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace ballotree
