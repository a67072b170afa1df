// Copyright 2026 The fgrowth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>

#include "fgrowth/errors.hpp"
#include "fgrowth/models.hpp"

namespace fgrowth {

namespace {

// Addresses of the reduced register in terms of the original one.
class ReducedLayout {
 public:
  ReducedLayout(const IndexSpace& original, int t)
      : original_(original),
        reduced_(original.n(), original.w() + t + 2, original.k() - t),
        t_(t),
        kept_clean_(original.k() - t - 1) {}

  const IndexSpace& reduced() const { return reduced_; }

  std::size_t flag_sources(std::size_t idx) const {
    return (reduced_.work_of(idx) >> original_.w()) & ((std::size_t{1} << (t_ + 1)) - 1);
  }
  std::size_t coin(std::size_t idx) const {
    return (reduced_.work_of(idx) >> (original_.w() + t_ + 1)) & 1;
  }
  std::size_t flag(std::size_t idx) const { return (reduced_.clean_of(idx) >> kept_clean_) & 1; }

  // Registers untouched by the original algorithm, packed as coin | flag << 1.
  std::size_t spectators(std::size_t idx) const { return coin(idx) | (flag(idx) << 1); }

  std::size_t to_original(std::size_t idx) const {
    const std::size_t work = reduced_.work_of(idx) & (original_.W() - 1);
    const std::size_t kept = reduced_.clean_of(idx) & ((std::size_t{1} << kept_clean_) - 1);
    const std::size_t clean = kept | (flag_sources(idx) << kept_clean_);
    return original_.flat(reduced_.oracle_of(idx), work, clean);
  }

  std::size_t from_original(std::size_t orig, std::size_t spectator) const {
    const std::size_t clean = original_.clean_of(orig);
    const std::size_t kept = clean & ((std::size_t{1} << kept_clean_) - 1);
    const std::size_t sources = clean >> kept_clean_;
    const std::size_t work = original_.work_of(orig) | (sources << original_.w()) |
                             ((spectator & 1) << (original_.w() + t_ + 1));
    const std::size_t reduced_clean = kept | ((spectator >> 1) << kept_clean_);
    return reduced_.flat(original_.oracle_of(orig), work, reduced_clean);
  }

  ComplexMatrix embed(const ComplexMatrix& u) const {
    const std::size_t m = reduced_.M();
    ComplexMatrix out = ComplexMatrix::Zero(m, m);
    for (std::size_t r = 0; r < m; ++r) {
      const std::size_t orig_row = to_original(r);
      const std::size_t spectator = spectators(r);
      for (std::size_t c = 0; c < original_.M(); ++c) {
        out(r, from_original(c, spectator)) = u(orig_row, c);
      }
    }
    return out;
  }

  template <typename Map>
  ComplexMatrix permutation(Map&& image) const {
    const std::size_t m = reduced_.M();
    ComplexMatrix p = ComplexMatrix::Zero(m, m);
    for (std::size_t c = 0; c < m; ++c) p(image(c), c) = 1.0;
    return p;
  }

  // X on every flag-source qubit.
  ComplexMatrix flip_sources() const {
    const std::size_t all = (std::size_t{1} << (t_ + 1)) - 1;
    return permutation([&](std::size_t idx) {
      const std::size_t work = reduced_.work_of(idx) ^ (all << original_.w());
      return reduced_.flat(reduced_.oracle_of(idx), work, reduced_.clean_of(idx));
    });
  }

  // Multi-controlled X from all flag-source qubits onto the flag.
  ComplexMatrix toffoli() const {
    const std::size_t all = (std::size_t{1} << (t_ + 1)) - 1;
    return permutation([&](std::size_t idx) {
      if (flag_sources(idx) != all) return idx;
      const std::size_t clean = reduced_.clean_of(idx) ^ (std::size_t{1} << kept_clean_);
      return reduced_.flat(reduced_.oracle_of(idx), reduced_.work_of(idx), clean);
    });
  }

 private:
  IndexSpace original_;
  IndexSpace reduced_;
  int t_;
  int kept_clean_;
};

}  // namespace

AlgorithmSpec reduce_clean_qubits(const AlgorithmSpec& spec, int t) {
  if (spec.model != Model::DQCK) {
    throw ParameterError("reduce_clean_qubits: input must be a DQCK algorithm");
  }
  const int k = spec.space.k();
  if (t < 1 || t >= k) {
    throw ParameterError("reduce_clean_qubits: need 1 <= t < k, got t=" + std::to_string(t) +
                         ", k=" + std::to_string(k));
  }
  const ReducedLayout layout(spec.space, t);
  AlgorithmSpec out;
  out.model = Model::DQCK;
  out.space = layout.reduced();
  out.d = spec.d;
  out.restriction = spec.restriction;

  const ComplexMatrix flip = layout.flip_sources();
  const ComplexMatrix prepare = flip * layout.toffoli() * flip;
  for (int step = 0; step <= spec.d; ++step) {
    ComplexMatrix u = layout.embed(spec.unitaries[step]);
    if (step == 0) u = u * prepare;
    out.unitaries.push_back(std::move(u));
  }

  const std::size_t m = out.space.M();
  out.accept.resize(m);
  for (std::size_t idx = 0; idx < m; ++idx) {
    out.accept[idx] = layout.flag(idx) ? spec.accepts(layout.to_original(idx))
                                       : layout.coin(idx) == 0;
  }
  validate(out);
  return out;
}

}  // namespace fgrowth
