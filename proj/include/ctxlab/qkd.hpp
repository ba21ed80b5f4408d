// Ekert-style raw key extraction from the contextual SPCE model.
//
// Alice and Bob measure along the same macroscopic axis. Alice keeps
// (s1 + 1) / 2, Bob keeps (-s2 + 1) / 2, so a perfectly anti-correlated
// source yields identical keys. Microscopic smearing (eps > 0) breaks strict
// anti-correlation and the keys disagree at rate
// (1 - (1 - eps_A/2)(1 - eps_B/2)) / 2 under uniform caps.

#ifndef CTXLAB_QKD_HPP
#define CTXLAB_QKD_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "ctxlab/randkit.hpp"
#include "ctxlab/spce.hpp"

namespace ctxlab::qkd {

struct KeyMeta {
  Direction axis = Direction::from_components(0, 0, 1);
  double epsilon_a = 0.0;
  double epsilon_b = 0.0;
  std::size_t n = 0;
  std::uint64_t master_seed = 0;
};

struct KeyPair {
  std::vector<std::uint8_t> alice;  // one 0/1 value per matched-basis pair
  std::vector<std::uint8_t> bob;
  KeyMeta meta;
};

KeyPair generate_keys(const Direction& axis, std::size_t n, double epsilon_a, double epsilon_b,
                      std::uint64_t master_seed, unsigned workers = 1);

/// Hamming distance over length.
double mismatch_rate(const KeyPair& keys);

/// Bits packed most-significant first, zero-padded to whole bytes.
std::string to_hex(const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> from_hex(const std::string& hex, std::size_t n_bits);

nlohmann::json to_json(const KeyPair& keys);

enum class Channel {
  contextual,       // honest source, contextual SPCE model
  intercept_resend  // outcomes replaced by the shared-lambda sign model
};

struct EkertTest {
  spce::CorrelatorQuad correlators;
  double s = 0.0;
};

/// CHSH value S over the four test settings. The four contextual runs use
/// seeds derive_seed(master_seed, 0..3).
EkertTest ekert_test_statistic(const spce::SettingQuad& settings, std::size_t n_test, double epsilon_a,
                               double epsilon_b, std::uint64_t master_seed, Channel channel = Channel::contextual,
                               unsigned workers = 1);

}  // namespace ctxlab::qkd

#endif  // CTXLAB_QKD_HPP
