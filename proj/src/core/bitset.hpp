//
// Copyright (c) 2026 The stablelog authors
//
// SPDX-License-Identifier: MIT
//
#ifndef STABLELOG_BITSET_HPP
#define STABLELOG_BITSET_HPP

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace stablelog {

/// Dynamically sized bitset used for interpretations and total choices.
/// Ordering compares bit 0 first: at the lowest differing index the set
/// with the bit clear sorts first.
class Bitset {
public:
	Bitset() = default;
	explicit Bitset(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

	std::size_t size() const { return size_; }
	bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
	void set(std::size_t i, bool v = true) {
		uint64_t mask = uint64_t{1} << (i & 63);
		if (v) words_[i >> 6] |= mask;
		else words_[i >> 6] &= ~mask;
	}
	void reset(std::size_t i) { set(i, false); }

	std::size_t count() const {
		std::size_t c = 0;
		for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
		return c;
	}
	bool none() const {
		for (auto w : words_)
			if (w) return false;
		return true;
	}

	Bitset& operator|=(const Bitset& o) {
		for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
		return *this;
	}
	Bitset& operator&=(const Bitset& o) {
		for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
		return *this;
	}
	bool intersects(const Bitset& o) const {
		for (std::size_t i = 0; i < words_.size(); ++i)
			if (words_[i] & o.words_[i]) return true;
		return false;
	}
	/// True if every bit set here is also set in `o`.
	bool subsetOf(const Bitset& o) const {
		for (std::size_t i = 0; i < words_.size(); ++i)
			if (words_[i] & ~o.words_[i]) return false;
		return true;
	}

	template <class F>
	void forEach(F&& f) const {
		for (std::size_t w = 0; w < words_.size(); ++w) {
			uint64_t bits = words_[w];
			while (bits) {
				std::size_t b = static_cast<std::size_t>(std::countr_zero(bits));
				f(w * 64 + b);
				bits &= bits - 1;
			}
		}
	}

	const std::vector<uint64_t>& words() const { return words_; }
	std::vector<uint64_t>&       words() { return words_; }

	friend bool operator==(const Bitset&, const Bitset&) = default;
	friend bool operator<(const Bitset& a, const Bitset& b) {
		for (std::size_t w = 0; w < a.words_.size() && w < b.words_.size(); ++w) {
			uint64_t diff = a.words_[w] ^ b.words_[w];
			if (diff) {
				uint64_t low = diff & (~diff + 1);
				return (b.words_[w] & low) != 0;
			}
		}
		return a.size_ < b.size_;
	}

private:
	std::size_t           size_ = 0;
	std::vector<uint64_t> words_;
};

struct BitsetHash {
	std::size_t operator()(const Bitset& b) const noexcept {
		std::size_t h = b.size();
		for (auto w : b.words()) h ^= std::hash<uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
		return h;
	}
};

} // namespace stablelog

#endif
