#pragma once

#include <array>
#include <cstdint>

namespace plsec {

/// Identifies one random substream. A (master_seed, stream_id) pair maps to
/// a fixed sequence of draws, independent of execution order or worker
/// count, so trial i can always be replayed by itself.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
};

namespace detail {

inline std::uint64_t mulhilo64(std::uint64_t a, std::uint64_t b, std::uint64_t& hi) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    return static_cast<std::uint64_t>(p);
}

} // namespace detail

/// Philox 4x64-10 counter-based generator (Salmon et al., SC'11 constants).
/// key = (master_seed, stream_id), counter = block index within the stream.
/// Stateless apart from the counter, so streams never collide and any block
/// can be computed directly.
class Philox4x64 {
public:
    using block_type = std::array<std::uint64_t, 4>;

    static constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ull;
    static constexpr std::uint64_t kMult1 = 0xCA5A826395121157ull;
    static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
    static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

    explicit Philox4x64(SeedSpec seed) noexcept
        : key_{seed.master_seed, seed.stream_id} {}

    /// One keyed bijection of a 256-bit counter; the primitive behind both
    /// stream generation and seed derivation.
    static block_type block(const block_type& counter,
                            const std::array<std::uint64_t, 2>& key) noexcept {
        block_type c = counter;
        std::uint64_t k0 = key[0];
        std::uint64_t k1 = key[1];
        for (int round = 0; round < 10; ++round) {
            std::uint64_t hi0, hi1;
            const std::uint64_t lo0 = detail::mulhilo64(kMult0, c[0], hi0);
            const std::uint64_t lo1 = detail::mulhilo64(kMult1, c[2], hi1);
            c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        return c;
    }

    std::uint64_t next_u64() noexcept {
        if (pos_ == 4) {
            buf_ = block(ctr_, key_);
            increment_counter();
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    void increment_counter() noexcept {
        for (auto& word : ctr_) {
            if (++word != 0) {
                break;
            }
        }
    }

    std::array<std::uint64_t, 2> key_;
    block_type ctr_{0, 0, 0, 0};
    block_type buf_{};
    int pos_ = 4;
};

} // namespace plsec
