#include "ctxlab/qkd.hpp"

#include <cctype>
#include <stdexcept>

namespace ctxlab::qkd {

KeyPair generate_keys(const Direction& axis, std::size_t n, double epsilon_a, double epsilon_b,
                      std::uint64_t master_seed, unsigned workers) {
  if (n == 0) throw std::domain_error("generate_keys: n must be at least 1");
  const spce::Polarizer pol_a(axis, epsilon_a), pol_b(axis, epsilon_b);
  const spce::ExperimentRun run = spce::run_experiment(pol_a, pol_b, n, master_seed, {false, workers});
  KeyPair keys;
  keys.meta = {axis, epsilon_a, epsilon_b, n, master_seed};
  keys.alice.reserve(n);
  keys.bob.reserve(n);
  for (const auto& r : run.records) {
    keys.alice.push_back(static_cast<std::uint8_t>((r.s1 + 1) / 2));
    keys.bob.push_back(static_cast<std::uint8_t>((-r.s2 + 1) / 2));
  }
  return keys;
}

double mismatch_rate(const KeyPair& keys) {
  if (keys.alice.size() != keys.bob.size()) throw std::domain_error("mismatch_rate: key lengths differ");
  if (keys.alice.empty()) throw std::domain_error("mismatch_rate: empty keys");
  std::size_t differ = 0;
  for (std::size_t i = 0; i < keys.alice.size(); ++i) differ += (keys.alice[i] != keys.bob[i]);
  return static_cast<double>(differ) / static_cast<double>(keys.alice.size());
}

std::string to_hex(const std::vector<std::uint8_t>& bits) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve((bits.size() + 7) / 8 * 2);
  for (std::size_t i = 0; i < bits.size(); i += 8) {
    unsigned byte = 0;
    for (std::size_t k = 0; k < 8; ++k) {
      byte <<= 1;
      if (i + k < bits.size() && bits[i + k]) byte |= 1u;
    }
    out.push_back(digits[byte >> 4]);
    out.push_back(digits[byte & 0xF]);
  }
  return out;
}

std::vector<std::uint8_t> from_hex(const std::string& hex, std::size_t n_bits) {
  if (hex.size() != (n_bits + 7) / 8 * 2) throw std::invalid_argument("from_hex: length does not match bit count");
  std::vector<std::uint8_t> bits;
  bits.reserve(n_bits);
  for (std::size_t i = 0; i < hex.size() && bits.size() < n_bits; i += 2) {
    if (!std::isxdigit(static_cast<unsigned char>(hex[i])) || !std::isxdigit(static_cast<unsigned char>(hex[i + 1]))) {
      throw std::invalid_argument("from_hex: not a hex digit at offset " + std::to_string(i));
    }
    const unsigned byte = static_cast<unsigned>(std::stoul(hex.substr(i, 2), nullptr, 16));
    for (int k = 7; k >= 0 && bits.size() < n_bits; --k) bits.push_back(static_cast<std::uint8_t>((byte >> k) & 1u));
  }
  return bits;
}

nlohmann::json to_json(const KeyPair& keys) {
  const auto& m = keys.meta;
  return {{"header",
           {{"axis", {m.axis.x(), m.axis.y(), m.axis.z()}},
            {"epsilon_A", m.epsilon_a},
            {"epsilon_B", m.epsilon_b},
            {"n", m.n},
            {"seed", m.master_seed},
            {"bit_order", "msb-first"}}},
          {"alice", to_hex(keys.alice)},
          {"bob", to_hex(keys.bob)}};
}

EkertTest ekert_test_statistic(const spce::SettingQuad& settings, std::size_t n_test, double epsilon_a,
                               double epsilon_b, std::uint64_t master_seed, Channel channel, unsigned workers) {
  if (n_test == 0) throw std::domain_error("ekert_test_statistic: N_test must be at least 1");
  EkertTest out;
  if (channel == Channel::intercept_resend) {
    out.correlators = spce::run_shared_lambda_model(settings, n_test, master_seed, workers).correlators;
  } else {
    auto correlator = [&](const Direction& x, const Direction& y, std::uint64_t tag) {
      const auto run = spce::run_experiment(spce::Polarizer(x, epsilon_a), spce::Polarizer(y, epsilon_b), n_test,
                                            derive_seed(master_seed, tag), {false, workers});
      return spce::empirical_correlator(run);
    };
    out.correlators = {correlator(settings.a, settings.b, 0), correlator(settings.a, settings.b_prime, 1),
                       correlator(settings.a_prime, settings.b, 2),
                       correlator(settings.a_prime, settings.b_prime, 3)};
  }
  out.s = out.correlators.chsh();
  return out;
}

}  // namespace ctxlab::qkd
