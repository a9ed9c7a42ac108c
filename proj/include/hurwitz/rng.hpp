// Counter-based random numbers: the i-th draw of stream s under seed k is a
// pure function of (k, s, i), so parallel runs reproduce serial ones.
#ifndef HURWITZ_RNG_HPP
#define HURWITZ_RNG_HPP

#include <cstdint>
#include <limits>

namespace hurwitz {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class CounterRng {
public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL)))
    {
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return splitmix64(key_ + splitmix64(counter_++)); }

    /// Uniform on [0, bound), by rejection.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = max() - max() % bound;
        for (;;) {
            std::uint64_t x = (*this)();
            if (x < limit)
                return x % bound;
        }
    }

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace hurwitz

#endif
