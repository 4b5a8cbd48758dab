// SPDX-License-Identifier: Apache-2.0
//
// jcas-sim: MI-optimal waveform design for MIMO joint communication and sensing
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef JCAS_RNG_HPP
#define JCAS_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace jcas {

// splitmix64 finalizer, used to mix seed words into stream seeds
inline std::uint64_t mix_u64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives an independent stream seed from a master seed and a label path,
// e.g. derive_seed(master, {axis_index, scheme_index, trial_index}).
// The derivation is order-sensitive and collision-resistant enough for
// Monte-Carlo stream separation.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path)
{
    std::uint64_t s = mix_u64(master);
    for (std::uint64_t word : path)
        s = mix_u64(s ^ mix_u64(word + 0x632be59bd9b4e019ULL));
    return s;
}

// Deterministic random stream. All distributions are generated from raw
// 64-bit draws with explicit arithmetic, so results are reproducible
// across standard library implementations (std::*_distribution is not).
class RngStream
{
  public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(mix_u64(seed)) {}

    std::uint64_t seed() const { return seed_; }

    // Independent child stream; does not consume state of this stream.
    RngStream fork(std::uint64_t tag) const { return RngStream(derive_seed(seed_, {tag})); }

    std::uint64_t next_u64() { return engine_(); }

    // uniform on [0, 1) with 53-bit resolution
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // circularly symmetric complex Gaussian, zero mean, E|z|^2 = 1
    std::complex<double> cgauss()
    {
        double u = 1.0 - uniform(); // (0, 1]
        double r = std::sqrt(-std::log(u));
        double th = 6.283185307179586476925286766559 * uniform();
        return {r * std::cos(th), r * std::sin(th)};
    }

    // real standard normal
    double gauss() { return 1.4142135623730950488 * cgauss().real(); }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace jcas

#endif
