#pragma once

#include <cstdint>

namespace asianld {

/// Philox4x32-10 counter-based generator. A stream is keyed by (seed, path);
/// draw j of a stream depends only on (seed, path, j), so parallel and serial
/// runs produce identical numbers.
class PhiloxStream {
  public:
    PhiloxStream(std::uint64_t seed, std::uint64_t path)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          path_lo_(static_cast<std::uint32_t>(path)),
          path_hi_(static_cast<std::uint32_t>(path >> 32)) {}

    /// Uniform double in the open interval (0, 1); draw index advances by one.
    double next_uniform() {
        if (lane_ == 0) {
            block(block_index_++);
            lane_ = 1;
            return to_unit(out_[0], out_[1]);
        }
        lane_ = 0;
        return to_unit(out_[2], out_[3]);
    }

  private:
    static constexpr std::uint32_t kM0 = 0xD2511F53u;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kW0 = 0x9E3779B9u;
    static constexpr std::uint32_t kW1 = 0xBB67AE85u;

    static std::uint32_t mulhi(std::uint32_t a, std::uint32_t b, std::uint32_t& lo) {
        const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
        lo = static_cast<std::uint32_t>(p);
        return static_cast<std::uint32_t>(p >> 32);
    }

    void block(std::uint32_t ctr) {
        std::uint32_t c0 = path_lo_, c1 = path_hi_, c2 = ctr, c3 = 0x9E3779B9u;
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            std::uint32_t lo0, lo1;
            const std::uint32_t hi0 = mulhi(kM0, c0, lo0);
            const std::uint32_t hi1 = mulhi(kM1, c2, lo1);
            const std::uint32_t n0 = hi1 ^ c1 ^ k0;
            const std::uint32_t n1 = lo1;
            const std::uint32_t n2 = hi0 ^ c3 ^ k1;
            const std::uint32_t n3 = lo0;
            c0 = n0;
            c1 = n1;
            c2 = n2;
            c3 = n3;
            k0 += kW0;
            k1 += kW1;
        }
        out_[0] = c0;
        out_[1] = c1;
        out_[2] = c2;
        out_[3] = c3;
    }

    static double to_unit(std::uint32_t hi, std::uint32_t lo) {
        const std::uint64_t bits =
            (static_cast<std::uint64_t>(hi) << 32 | lo) >> 11;  // top 53 bits
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    std::uint32_t key0_, key1_, path_lo_, path_hi_;
    std::uint32_t block_index_ = 0;
    std::uint32_t out_[4] = {0, 0, 0, 0};
    int lane_ = 0;
};

}  // namespace asianld
