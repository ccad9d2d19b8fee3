#pragma once

// Symbolic words over a family's alphabet: simplicity, cyclic equivalence,
// white/black classification relative to a candidate dominant word, and the
// greedy power-spotting partition of long words into white powers and black
// separators with controlled lengths.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lss {

using Letter = std::uint8_t;

struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  // Parse a digit string like "0110". Alphabets up to 10 letters.
  static Word parse(const std::string& digits);

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  std::string str() const;

  Word rotated(std::size_t shift) const;      // left rotation
  Word repeated(std::size_t times) const;
  Word concat(const Word& other) const;
  Word subword(std::size_t pos, std::size_t len) const;

  friend bool operator==(const Word&, const Word&) = default;
  auto operator<=>(const Word&) const = default;
};

// True iff w is not a power of a strictly shorter word. Errors on empty input.
bool is_simple(const Word& w);

// True iff w2 is a rotation of w1.
bool cyclically_equal(const Word& w1, const Word& w2);

// Shortest u with w = u^k; the whole word when w is simple.
Word primitive_root(const Word& w);

// Lexicographically least rotation (canonical cyclic-class representative).
Word canonical_rotation(const Word& w);

// One decomposition w = a pi^k b with |a| <= |pi|-1, |b| <= M, k >= 0.
struct WhiteWitness {
  Word a;
  std::size_t k;
  Word b;
};

// White with a witness when such a decomposition exists, Black (nullopt)
// otherwise. pi must be simple. Any word shorter than |pi| + M is white.
std::optional<WhiteWitness> classify(const Word& w, const Word& pi, std::size_t M);

enum class SegmentColor { White, Black };
enum class SegmentOrigin {
  Power,     // a spotted maximal power of pi (possibly shrunk by lending)
  Split,     // slice of a long gap, length within [N, 2N]
  Padded,    // pi + gap + pi^{l-1}, guaranteed black
  Leading,   // the pre-first-power prefix, kept as-is (exempt from the
             // lower length bound)
  Trailing,  // final remainder of a finite word (exempt likewise)
};

struct Segment {
  Word word;
  SegmentColor color;
  SegmentOrigin origin;
};

struct Partition {
  std::vector<Segment> segments;
  std::size_t n = 0;  // |pi|
  std::size_t M = 0;
  std::size_t l = 0;  // smallest integer with l*n > 2n + M
  std::size_t N = 0;  // (l+1)*n + M

  Word reassembled() const;
};

// Partition w relative to (pi, M): spot maximal powers of pi of length
// >= l*n greedily left to right, split long gaps into black pieces of length
// in [N, 2N], and pad short interior gaps to pi^2 * gap * pi^{l-2} by
// borrowing copies from the neighbouring powers (each power lends at most
// its head l-2 plus its tail 2, which spotted powers always have; a power
// lent down to zero copies simply disappears from the output). The padded
// segments are provably black: a white witness would need a power run
// starting within n-1 letters, and a shifted run cannot pass through pi^2
// when pi is primitive, while an aligned run stops at the gap.
// Finite-word convention: the remainder after the last spotted power becomes
// a final segment exempt from the lower length bound.
Partition partition(const Word& w, const Word& pi, std::size_t M);

}  // namespace lss
