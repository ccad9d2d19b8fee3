#include "lss/words.hpp"

#include <algorithm>

#include "lss/errors.hpp"

namespace lss {

Word Word::parse(const std::string& digits) {
  Word w;
  w.letters.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') throw invalid_input("Word::parse: expected digit characters");
    w.letters.push_back(static_cast<Letter>(c - '0'));
  }
  return w;
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters.size());
  for (Letter l : letters) s.push_back(static_cast<char>('0' + l));
  return s;
}

Word Word::rotated(std::size_t shift) const {
  if (empty()) return {};
  shift %= size();
  Word r;
  r.letters.reserve(size());
  r.letters.insert(r.letters.end(), letters.begin() + static_cast<std::ptrdiff_t>(shift), letters.end());
  r.letters.insert(r.letters.end(), letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(shift));
  return r;
}

Word Word::repeated(std::size_t times) const {
  Word r;
  r.letters.reserve(size() * times);
  for (std::size_t i = 0; i < times; ++i) r.letters.insert(r.letters.end(), letters.begin(), letters.end());
  return r;
}

Word Word::concat(const Word& other) const {
  Word r = *this;
  r.letters.insert(r.letters.end(), other.letters.begin(), other.letters.end());
  return r;
}

Word Word::subword(std::size_t pos, std::size_t len) const {
  Word r;
  r.letters.assign(letters.begin() + static_cast<std::ptrdiff_t>(pos),
                   letters.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return r;
}

bool is_simple(const Word& w) {
  if (w.empty()) throw invalid_input("is_simple: empty word");
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool match = true;
    for (std::size_t i = p; i < n && match; ++i) match = w.letters[i] == w.letters[i - p];
    if (match) return false;
  }
  return true;
}

bool cyclically_equal(const Word& w1, const Word& w2) {
  if (w1.size() != w2.size()) return false;
  if (w1.empty()) return true;
  const auto doubled = w1.concat(w1);
  return std::search(doubled.letters.begin(), doubled.letters.end(), w2.letters.begin(),
                     w2.letters.end()) != doubled.letters.end();
}

Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool match = true;
    for (std::size_t i = p; i < n && match; ++i) match = w.letters[i] == w.letters[i - p];
    if (match) return w.subword(0, p);
  }
  return w;
}

Word canonical_rotation(const Word& w) {
  Word best = w;
  for (std::size_t s = 1; s < w.size(); ++s) best = std::min(best, w.rotated(s));
  return best;
}

std::optional<WhiteWitness> classify(const Word& w, const Word& pi, std::size_t M) {
  if (pi.empty() || !is_simple(pi)) throw invalid_input("classify: pi must be a nonempty simple word");
  const std::size_t n = pi.size();
  for (std::size_t la = 0; la <= std::min(n - 1, w.size()); ++la) {
    for (std::size_t lb = 0; lb <= std::min(M, w.size() - la); ++lb) {
      const std::size_t mid = w.size() - la - lb;
      if (mid % n != 0) continue;
      bool match = true;
      for (std::size_t i = 0; i < mid && match; ++i) match = w.letters[la + i] == pi.letters[i % n];
      if (match)
        return WhiteWitness{w.subword(0, la), mid / n, w.subword(w.size() - lb, lb)};
    }
  }
  return std::nullopt;
}

Word Partition::reassembled() const {
  Word r;
  for (const auto& s : segments) r = r.concat(s.word);
  return r;
}

namespace {

// Greedy maximal disjoint powers of pi: find the first occurrence, extend it
// as far as it goes, continue after it.
struct SpottedPower {
  std::size_t pos;
  std::size_t count;
};

std::vector<SpottedPower> spot_powers(const Word& w, const Word& pi) {
  std::vector<SpottedPower> out;
  const std::size_t n = pi.size();
  std::size_t i = 0;
  while (i + n <= w.size()) {
    const auto it = std::search(w.letters.begin() + static_cast<std::ptrdiff_t>(i), w.letters.end(),
                                pi.letters.begin(), pi.letters.end());
    if (it == w.letters.end()) break;
    const std::size_t j = static_cast<std::size_t>(it - w.letters.begin());
    std::size_t k = 1;
    while (j + (k + 1) * n <= w.size()) {
      bool match = true;
      for (std::size_t t = 0; t < n && match; ++t) match = w.letters[j + k * n + t] == pi.letters[t];
      if (!match) break;
      ++k;
    }
    out.push_back({j, k});
    i = j + k * n;
  }
  return out;
}

}  // namespace

Partition partition(const Word& w, const Word& pi, std::size_t M) {
  if (pi.empty() || !is_simple(pi)) throw invalid_input("partition: pi must be a nonempty simple word");
  Partition part;
  const std::size_t n = pi.size();
  part.n = n;
  part.M = M;
  std::size_t l = 1;
  while (l * n <= 2 * n + M) ++l;
  part.l = l;
  const std::size_t N = (l + 1) * n + M;
  part.N = N;
  if (w.empty()) return part;

  std::vector<SpottedPower> powers;
  for (const auto& sp : spot_powers(w, pi))
    if (sp.count >= l) powers.push_back(sp);

  // gap i sits before power i; gap powers.size() is the trailing remainder
  struct Gap {
    std::size_t begin, end;
    bool padded = false;
  };
  std::vector<Gap> gaps;
  std::size_t prev_end = 0;
  for (const auto& p : powers) {
    gaps.push_back({prev_end, p.pos});
    prev_end = p.pos + p.count * n;
  }
  gaps.push_back({prev_end, w.size()});

  // Short interior gaps are padded to pi^2 + gap + pi^{l-2}. Two copies on
  // the left (rather than one) close a hole in the single-copy variant: for
  // a word like pi = 0010 a gap can complete a shifted phase of pi across
  // the boundary, making pi + gap + pi^{l-1} white with a witness offset in
  // [1, n-1]. A shifted occurrence of a primitive word cannot sit inside
  // pi^2, so the two-copy pad is black outright; the total length l*n + gap
  // is unchanged, and each power lends head l-2 plus tail 2 = l <= k copies.
  std::vector<std::size_t> lent(powers.size(), 0);
  for (std::size_t gi = 0; gi < gaps.size(); ++gi) {
    const std::size_t len = gaps[gi].end - gaps[gi].begin;
    const bool interior = gi > 0 && gi + 1 < gaps.size();
    if (len > 0 && len < N && interior) {
      gaps[gi].padded = true;
      lent[gi - 1] += 2;      // pi^2 from the left neighbour's tail
      lent[gi] += l - 2;      // pi^{l-2} from the right neighbour's head
    }
  }

  auto emit_split = [&](std::size_t begin, std::size_t end) {
    const std::size_t len = end - begin;
    const std::size_t pieces = (len + 2 * N - 1) / (2 * N);
    const std::size_t base = len / pieces, rem = len % pieces;
    std::size_t pos = begin;
    for (std::size_t i = 0; i < pieces; ++i) {
      const std::size_t sz = base + (i < rem ? 1 : 0);
      part.segments.push_back({w.subword(pos, sz), SegmentColor::Black, SegmentOrigin::Split});
      pos += sz;
    }
  };

  for (std::size_t gi = 0; gi < gaps.size(); ++gi) {
    const std::size_t len = gaps[gi].end - gaps[gi].begin;
    if (len > 0) {
      if (gaps[gi].padded) {
        Word padded =
            pi.repeated(2).concat(w.subword(gaps[gi].begin, len)).concat(pi.repeated(l - 2));
        part.segments.push_back({std::move(padded), SegmentColor::Black, SegmentOrigin::Padded});
      } else if (len >= N) {
        emit_split(gaps[gi].begin, gaps[gi].end);
      } else {
        const SegmentOrigin origin = gi == 0 ? SegmentOrigin::Leading : SegmentOrigin::Trailing;
        part.segments.push_back({w.subword(gaps[gi].begin, len), SegmentColor::Black, origin});
      }
    }
    if (gi < powers.size()) {
      const std::size_t remaining = powers[gi].count - lent[gi];
      if (remaining > 0)
        part.segments.push_back({pi.repeated(remaining), SegmentColor::White, SegmentOrigin::Power});
    }
  }
  return part;
}

}  // namespace lss
