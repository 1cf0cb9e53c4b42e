#pragma once
#include <bit>
#include <cstdint>
#include <vector>

namespace rainbow {

// Dense bit matrix, one contiguous row of bits per vertex. Degree and
// neighborhood queries become word-wide popcounts, which is what we want at
// the edge densities this library runs at.
class BitRows {
public:
  BitRows() = default;
  BitRows(int rows, int cols)
      : rows_(rows), cols_(cols), stride_((cols + 63) / 64),
        words_(static_cast<std::size_t>(rows) * stride_, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int stride() const { return stride_; }

  bool get(int r, int c) const {
    return (word(r, c >> 6) >> (c & 63)) & std::uint64_t{1};
  }
  void set(int r, int c) { word(r, c >> 6) |= std::uint64_t{1} << (c & 63); }
  void reset(int r, int c) { word(r, c >> 6) &= ~(std::uint64_t{1} << (c & 63)); }

  int row_popcount(int r) const {
    int s = 0;
    const std::uint64_t* w = row(r);
    for (int i = 0; i < stride_; ++i) s += std::popcount(w[i]);
    return s;
  }

  // popcount of row r restricted to positions set in mask (stride() words)
  int row_popcount_masked(int r, const std::uint64_t* mask) const {
    int s = 0;
    const std::uint64_t* w = row(r);
    for (int i = 0; i < stride_; ++i) s += std::popcount(w[i] & mask[i]);
    return s;
  }

  const std::uint64_t* row(int r) const {
    return words_.data() + static_cast<std::size_t>(r) * stride_;
  }
  std::uint64_t* row(int r) {
    return words_.data() + static_cast<std::size_t>(r) * stride_;
  }

  // Visit every set column index in row r, ascending.
  template <class Fn>
  void for_each_in_row(int r, Fn&& fn) const {
    const std::uint64_t* w = row(r);
    for (int i = 0; i < stride_; ++i) {
      std::uint64_t x = w[i];
      while (x) {
        int b = std::countr_zero(x);
        fn(i * 64 + b);
        x &= x - 1;
      }
    }
  }

  bool operator==(const BitRows&) const = default;

private:
  std::uint64_t& word(int r, int w) {
    return words_[static_cast<std::size_t>(r) * stride_ + w];
  }
  const std::uint64_t& word(int r, int w) const {
    return words_[static_cast<std::size_t>(r) * stride_ + w];
  }

  int rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<std::uint64_t> words_;
};

} // namespace rainbow
