#pragma once

#include <nsecc/bitstring.hpp>
#include <nsecc/primes.hpp>
#include <nsecc/ratrec.hpp>
#include <nsecc/reed_muller.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace nsecc {

enum class Variant : std::uint8_t {
  basic = 0,
  small_prime = 1,
  packed = 2,
  bootstrapped = 3,
};

inline std::string to_string(Variant v) {
  switch (v) {
    case Variant::basic: return "basic";
    case Variant::small_prime: return "small";
    case Variant::packed: return "packed";
    case Variant::bootstrapped: return "boot";
  }
  throw std::invalid_argument("unknown variant");
}

inline Variant variant_from_string(const std::string& s) {
  if (s == "basic") return Variant::basic;
  if (s == "small") return Variant::small_prime;
  if (s == "packed") return Variant::packed;
  if (s == "boot") return Variant::bootstrapped;
  throw std::invalid_argument("unknown variant '" + s + "'");
}

struct CodecConfig {
  Variant variant = Variant::basic;
  std::size_t k = 0;    // message payload in bits
  unsigned t = 0;       // worst-case correction radius
  unsigned gamma = 2;   // symbol alphabet size (basic and packed only)
  unsigned u = 1;       // margin exponent for the small-prime variant
  unsigned depth = 1;   // bootstrap nesting depth

  // Overrides the canonical modulus; meant for replaying fixed instances.
  std::optional<Natural> p_override;
  // Skip the inner code and ship redundancy bits bare (debug/replay aid).
  bool identity_inner = false;
};

struct InnerSpec {
  enum class Kind : std::uint8_t { reed_muller, replication, identity };
  Kind kind = Kind::reed_muller;
  std::optional<RMParams> rm;
  unsigned copies = 0;
  std::size_t block_len = 0;  // symbols contributed to the codeword
};

struct BootLevel {
  std::size_t message_bits = 0;
  std::shared_ptr<const PrimeTable> table;
  Natural p;
  std::size_t p_bits = 0;
  Natural bound;  // numerator/denominator bound for reconstruction
};

struct CodecParams {
  CodecConfig config;
  std::size_t kappa = 0;  // message length in symbols
  std::shared_ptr<const PrimeTable> table;
  Natural p;
  std::size_t p_bits = 0;
  Natural bound;         // reconstruction bound (basic and packed)
  Natural ab_cap;        // small-prime sweep validity cap on a*b
  Natural pack_product;  // packed variant: product of top pack primes
  InnerSpec inner;
  std::vector<BootLevel> levels;  // bootstrap levels, outermost first
  std::size_t codeword_len = 0;
};

// Number of base-`base` symbols needed to carry k bits: the least kappa
// with base^kappa >= 2^k.  The float estimate is verified exactly whenever
// it lands near an integer boundary.
inline std::size_t digit_count(std::size_t k, unsigned base) {
  if (k == 0) throw std::invalid_argument("digit_count: k must be positive");
  if (base == 2) return k;
  const long double est = static_cast<long double>(k) / std::log2(static_cast<long double>(base));
  std::size_t kappa = static_cast<std::size_t>(std::ceil(est));
  const long double frac = est - std::floor(est);
  if (frac < 1e-6L || frac > 1 - 1e-6L) {
    std::size_t guess = static_cast<std::size_t>(std::llround(est));
    if (guess == 0) guess = 1;
    const Natural target = Natural(1) << k;
    if (pow_nat(base, guess) >= target)
      kappa = (guess > 1 && pow_nat(base, guess - 1) >= target) ? guess - 1 : guess;
    else
      kappa = guess + 1;
  }
  return kappa;
}

enum class DecodeStatus : std::uint8_t {
  ok,
  inner_failed,              // inner code could not recover the redundancy bits
  bad_redundancy,            // recovered integer outside [1, p)
  reconstruction_failed,     // no fraction within bounds
  negative_numerator,        // reconstruction produced -a/b
  incomplete_factorization,  // a or b kept a cofactor outside the table
  inconsistent_support,      // factor pattern contradicts the received digits
  digit_out_of_range,        // corrected digit left [0, gamma)
  too_many_corrections,      // more than t positions would change
  sweep_exhausted,           // no sweep step produced a valid candidate
};

inline std::string to_string(DecodeStatus s) {
  switch (s) {
    case DecodeStatus::ok: return "ok";
    case DecodeStatus::inner_failed: return "inner_failed";
    case DecodeStatus::bad_redundancy: return "bad_redundancy";
    case DecodeStatus::reconstruction_failed: return "reconstruction_failed";
    case DecodeStatus::negative_numerator: return "negative_numerator";
    case DecodeStatus::incomplete_factorization: return "incomplete_factorization";
    case DecodeStatus::inconsistent_support: return "inconsistent_support";
    case DecodeStatus::digit_out_of_range: return "digit_out_of_range";
    case DecodeStatus::too_many_corrections: return "too_many_corrections";
    case DecodeStatus::sweep_exhausted: return "sweep_exhausted";
  }
  throw std::invalid_argument("unknown status");
}

struct DecodeReport {
  BitString message;
  std::set<std::size_t> corrected_positions;  // 1-based message symbol indices
  bool inner_corrected = false;
  std::optional<unsigned> sweep_index;
  bool relaxed = false;
};

struct DecodeOutcome {
  DecodeStatus status = DecodeStatus::ok;
  std::optional<DecodeReport> report;

  bool ok() const { return status == DecodeStatus::ok; }
};

struct Factorization {
  std::map<std::size_t, unsigned> exponents;  // 1-based prime index -> exponent
  Natural cofactor = 1;

  bool complete() const { return cofactor == 1; }
};

inline Factorization factor_over_table(const Natural& x, const PrimeTable& table,
                                       unsigned max_exponent) {
  if (x < 1) throw std::invalid_argument("factor_over_table: x must be >= 1");
  if (max_exponent == 0) throw std::invalid_argument("factor_over_table: zero exponent cap");
  Factorization out;
  out.cofactor = x;
  for (std::size_t i = 1; i <= table.count() && out.cofactor > 1; ++i) {
    const std::uint64_t q = table.prime(i);
    unsigned e = 0;
    while (e < max_exponent && out.cofactor % q == 0) {
      out.cofactor /= q;
      ++e;
    }
    if (e) out.exponents.emplace(i, e);
  }
  return out;
}

// Same, but only the listed prime indices are tried (pack-skipping).
inline Factorization factor_over_table(const Natural& x, const PrimeTable& table,
                                       unsigned max_exponent,
                                       std::span<const std::size_t> candidates) {
  if (x < 1) throw std::invalid_argument("factor_over_table: x must be >= 1");
  if (max_exponent == 0) throw std::invalid_argument("factor_over_table: zero exponent cap");
  Factorization out;
  out.cofactor = x;
  for (std::size_t i : candidates) {
    if (out.cofactor == 1) break;
    const std::uint64_t q = table.prime(i);
    unsigned e = 0;
    while (e < max_exponent && out.cofactor % q == 0) {
      out.cofactor /= q;
      ++e;
    }
    if (e) out.exponents.emplace(i, e);
  }
  return out;
}

namespace detail {

inline void validate_config(const CodecConfig& cfg) {
  if (cfg.k == 0) throw std::invalid_argument("config: k must be positive");
  if (cfg.t == 0) throw std::invalid_argument("config: t must be positive");
  if (cfg.gamma < 2) throw std::invalid_argument("config: gamma must be >= 2");
  if (cfg.gamma > 36) throw std::invalid_argument("config: gamma above 36 unsupported");
  switch (cfg.variant) {
    case Variant::basic:
      break;
    case Variant::small_prime:
      if (cfg.gamma != 2) throw std::invalid_argument("config: small-prime variant is binary");
      if (cfg.u == 0) throw std::invalid_argument("config: u must be positive");
      break;
    case Variant::packed:
      break;
    case Variant::bootstrapped:
      if (cfg.gamma != 2) throw std::invalid_argument("config: bootstrapped variant is binary");
      if (cfg.depth == 0) throw std::invalid_argument("config: depth must be positive");
      if (cfg.identity_inner)
        throw std::invalid_argument("config: identity inner not available when bootstrapped");
      if (cfg.p_override)
        throw std::invalid_argument("config: modulus override not available when bootstrapped");
      break;
  }
  if (cfg.identity_inner && cfg.gamma != 2)
    throw std::invalid_argument("config: identity inner requires gamma = 2");
}

inline InnerSpec make_inner(const CodecConfig& cfg, std::size_t p_bits) {
  InnerSpec inner;
  if (cfg.identity_inner) {
    inner.kind = InnerSpec::Kind::identity;
    inner.block_len = p_bits;
    return inner;
  }
  inner.kind = InnerSpec::Kind::reed_muller;
  inner.rm = choose_inner_code(p_bits, cfg.t);
  inner.block_len = inner.rm->n;
  return inner;
}

}  // namespace detail

// Derives the full parameter set for a configuration.  Deterministic: the
// modulus is the smallest prime above the variant's window floor (unless
// overridden), so both ends can regenerate identical parameters from the
// configuration alone.
inline CodecParams gen_params(const CodecConfig& cfg,
                              std::shared_ptr<const PrimeTable> prebuilt = nullptr) {
  detail::validate_config(cfg);

  CodecParams out;
  out.config = cfg;

  const unsigned gamma = cfg.gamma;
  std::size_t table_size = 0;
  if (cfg.variant == Variant::packed) {
    out.kappa = digit_count(cfg.k, gamma);
    if (out.kappa <= cfg.t)
      throw std::invalid_argument("config: packed variant needs more symbols than t");
    table_size = out.kappa * gamma;
  } else if (cfg.variant == Variant::basic && gamma > 2) {
    out.kappa = digit_count(cfg.k, gamma);
    table_size = out.kappa;
  } else {
    out.kappa = cfg.k;
    table_size = cfg.k;
  }

  if (prebuilt && prebuilt->count() >= table_size)
    out.table = std::move(prebuilt);
  else
    out.table = std::make_shared<const PrimeTable>(build_prime_table(table_size));

  Natural window_floor;
  switch (cfg.variant) {
    case Variant::basic:
      if (gamma == 2) {
        const Natural pk = out.table->prime(cfg.k);
        window_floor = 2 * pow_nat(pk, 2 * cfg.t);
        out.bound = pow_nat(pk, cfg.t) - 1;
      } else {
        const Natural pk = out.table->prime(out.kappa);
        window_floor = 2 * pow_nat(pk, 2 * cfg.t * (gamma - 1));
        out.bound = pow_nat(pk, cfg.t * (gamma - 1)) - 1;
      }
      break;
    case Variant::small_prime: {
      const Natural pk = out.table->prime(cfg.k);
      out.ab_cap = pow_nat(pk, cfg.t);
      window_floor = (Natural(1) << cfg.u) * out.ab_cap;
      break;
    }
    case Variant::packed: {
      Natural f = 1;
      for (std::size_t i = out.kappa - cfg.t; i <= out.kappa; ++i)
        f *= out.table->prime(i * gamma);
      out.pack_product = f;
      window_floor = 2 * f * f;
      out.bound = f - 1;
      break;
    }
    case Variant::bootstrapped: {
      // Each level is an independent binary basic instance whose message is
      // the previous level's redundancy bits; sizes must strictly shrink.
      std::size_t msg_bits = cfg.k;
      for (unsigned level = 1; level <= cfg.depth; ++level) {
        BootLevel bl;
        bl.message_bits = msg_bits;
        bl.table = (level == 1 && prebuilt && prebuilt->count() >= msg_bits)
                       ? prebuilt
                       : std::make_shared<const PrimeTable>(build_prime_table(msg_bits));
        const Natural pk = bl.table->prime(msg_bits);
        const Natural floor_l = 2 * pow_nat(pk, 2 * cfg.t);
        bl.p = next_prime_above(floor_l, 2 * floor_l);
        bl.p_bits = bit_length(bl.p);
        bl.bound = pow_nat(pk, cfg.t) - 1;
        if (bl.p_bits >= msg_bits)
          throw Error("gen_params: bootstrap level " + std::to_string(level) +
                      " does not shrink (" + std::to_string(msg_bits) + " -> " +
                      std::to_string(bl.p_bits) + " bits); reduce depth");
        msg_bits = bl.p_bits;
        out.levels.push_back(std::move(bl));
      }
      out.table = out.levels.front().table;
      out.p = out.levels.front().p;
      out.p_bits = out.levels.front().p_bits;
      out.bound = out.levels.front().bound;
      out.inner.kind = InnerSpec::Kind::replication;
      out.inner.copies = 2 * cfg.t + 1;
      out.inner.block_len = out.inner.copies * out.levels.back().p_bits;
      out.codeword_len = cfg.k;
      for (unsigned level = 1; level + 1 <= cfg.depth; ++level)
        out.codeword_len += out.levels[level - 1].p_bits;
      out.codeword_len += out.inner.block_len;
      return out;
    }
  }

  if (cfg.p_override) {
    if (!is_prime(*cfg.p_override))
      throw std::invalid_argument("config: override modulus is composite");
    if (*cfg.p_override <= out.table->largest())
      throw std::invalid_argument("config: override modulus inside the prime table");
    out.p = *cfg.p_override;
  } else {
    out.p = next_prime_above(window_floor, 2 * window_floor);
  }
  out.p_bits = bit_length(out.p);
  out.inner = detail::make_inner(cfg, out.p_bits);
  out.codeword_len = out.kappa + out.inner.block_len;
  return out;
}

// Modular redundancy product for one message.
inline Natural redundancy(const CodecParams& params, const BitString& m) {
  if (m.size() != params.kappa)
    throw std::invalid_argument("redundancy: expected " + std::to_string(params.kappa) +
                                " symbols");
  const Natural& p = params.levels.empty() ? params.p : params.levels.front().p;
  const PrimeTable& table = *params.table;
  const unsigned gamma = params.config.gamma;
  Natural acc = 1;
  if (params.config.variant == Variant::packed) {
    for (std::size_t i = 0; i < params.kappa; ++i)
      acc = (acc * table.prime(i * gamma + m.digit(i) + 1)) % p;
  } else {
    for (std::size_t i = 0; i < params.kappa; ++i)
      for (unsigned e = 0; e < m.digit(i); ++e)
        acc = (acc * table.prime(i + 1)) % p;
  }
  return acc;
}

namespace detail {

inline Natural level_redundancy(const BootLevel& level, const BitString& m) {
  Natural acc = 1;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.digit(i)) acc = (acc * level.table->prime(i + 1)) % level.p;
  return acc;
}

inline BitString inner_encode(const CodecParams& params, const Natural& c) {
  BitString bits = BitString::from_bits_of(c, params.p_bits);
  switch (params.inner.kind) {
    case InnerSpec::Kind::identity:
      return bits;
    case InnerSpec::Kind::reed_muller: {
      BitString padded(2, params.inner.rm->k);
      for (std::size_t i = 0; i < bits.size(); ++i) padded.set_digit(i, bits.digit(i));
      return rm_encode(*params.inner.rm, padded);
    }
    case InnerSpec::Kind::replication:
      return rep_encode(bits, params.inner.copies);
  }
  throw Error("inner_encode: bad inner kind");
}

struct BitCorrections {
  DecodeStatus status = DecodeStatus::ok;
  BitString message;
  std::set<std::size_t> positions;
};

// Applies a factored quotient a/b to received binary digits: indices in a
// flip 1 -> 0, indices in b flip 0 -> 1.
inline BitCorrections apply_bit_corrections(const BitString& received, const Factorization& fa,
                                            const Factorization& fb, unsigned t) {
  BitCorrections out;
  out.message = received;
  if (!fa.complete() || !fb.complete()) {
    out.status = DecodeStatus::incomplete_factorization;
    return out;
  }
  for (const auto& [idx, exp] : fa.exponents) {
    if (exp != 1 || fb.exponents.count(idx) || received.digit(idx - 1) != 1) {
      out.status = DecodeStatus::inconsistent_support;
      return out;
    }
    out.message.set_digit(idx - 1, 0);
    out.positions.insert(idx);
  }
  for (const auto& [idx, exp] : fb.exponents) {
    if (exp != 1 || received.digit(idx - 1) != 0) {
      out.status = DecodeStatus::inconsistent_support;
      return out;
    }
    out.message.set_digit(idx - 1, 1);
    out.positions.insert(idx);
  }
  if (out.positions.size() > t) {
    out.status = DecodeStatus::too_many_corrections;
    return out;
  }
  return out;
}

// Wider-alphabet correction for the basic variant: exponents in a lower the
// digit, exponents in b raise it.
inline BitCorrections apply_digit_corrections(const BitString& received, const Factorization& fa,
                                              const Factorization& fb, unsigned t,
                                              unsigned gamma) {
  BitCorrections out;
  out.message = received;
  if (!fa.complete() || !fb.complete()) {
    out.status = DecodeStatus::incomplete_factorization;
    return out;
  }
  for (const auto& [idx, exp] : fa.exponents) {
    if (fb.exponents.count(idx)) {
      out.status = DecodeStatus::inconsistent_support;
      return out;
    }
    const int d = static_cast<int>(received.digit(idx - 1)) - static_cast<int>(exp);
    if (d < 0) {
      out.status = DecodeStatus::digit_out_of_range;
      return out;
    }
    out.message.set_digit(idx - 1, static_cast<std::uint8_t>(d));
    out.positions.insert(idx);
  }
  for (const auto& [idx, exp] : fb.exponents) {
    const int d = static_cast<int>(received.digit(idx - 1)) + static_cast<int>(exp);
    if (d >= static_cast<int>(gamma)) {
      out.status = DecodeStatus::digit_out_of_range;
      return out;
    }
    out.message.set_digit(idx - 1, static_cast<std::uint8_t>(d));
    out.positions.insert(idx);
  }
  if (out.positions.size() > t) {
    out.status = DecodeStatus::too_many_corrections;
    return out;
  }
  return out;
}

// Packed correction: a's factors identify the error packs, b's factors the
// true digit inside each such pack.  Factoring is restricted to the primes
// the packing could actually have used.
inline BitCorrections apply_packed_corrections(const CodecParams& params,
                                               const BitString& received, const Natural& a,
                                               const Natural& b) {
  const unsigned gamma = params.config.gamma;
  BitCorrections out;
  out.message = received;

  std::vector<std::size_t> cand_a(params.kappa);
  for (std::size_t i = 0; i < params.kappa; ++i)
    cand_a[i] = i * gamma + received.digit(i) + 1;
  Factorization fa = factor_over_table(a, *params.table, 1, cand_a);
  if (!fa.complete()) {
    out.status = DecodeStatus::incomplete_factorization;
    return out;
  }

  std::vector<std::size_t> packs;
  for (const auto& [idx, exp] : fa.exponents) packs.push_back((idx - 1) / gamma);

  std::vector<std::size_t> cand_b;
  for (std::size_t pack : packs)
    for (unsigned j = 0; j < gamma; ++j) {
      const std::size_t idx = pack * gamma + j + 1;
      if (j != received.digit(pack)) cand_b.push_back(idx);
    }
  Factorization fb = factor_over_table(b, *params.table, 1, cand_b);
  if (!fb.complete()) {
    out.status = DecodeStatus::incomplete_factorization;
    return out;
  }

  std::map<std::size_t, unsigned> fixes;  // pack -> corrected digit
  for (const auto& [idx, exp] : fb.exponents) {
    const std::size_t pack = (idx - 1) / gamma;
    const unsigned digit = static_cast<unsigned>((idx - 1) % gamma);
    if (fixes.count(pack)) {
      out.status = DecodeStatus::inconsistent_support;
      return out;
    }
    fixes[pack] = digit;
  }
  if (fixes.size() != packs.size()) {
    out.status = DecodeStatus::inconsistent_support;
    return out;
  }
  for (std::size_t pack : packs)
    if (!fixes.count(pack)) {
      out.status = DecodeStatus::inconsistent_support;
      return out;
    }
  if (fixes.size() > params.config.t) {
    out.status = DecodeStatus::too_many_corrections;
    return out;
  }
  for (const auto& [pack, digit] : fixes) {
    out.message.set_digit(pack, static_cast<std::uint8_t>(digit));
    out.positions.insert(pack + 1);
  }
  return out;
}

struct InnerDecode {
  DecodeStatus status = DecodeStatus::ok;
  Natural c;
  bool corrected = false;
};

// Digit-wise comparison that ignores the carrier base (the inner block sits
// inside a base-gamma codeword but re-encodes as plain bits).
inline bool same_digits(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.digit(i) != b.digit(i)) return false;
  return true;
}

inline InnerDecode recover_redundancy(const CodecParams& params, const BitString& block) {
  InnerDecode out;
  switch (params.inner.kind) {
    case InnerSpec::Kind::identity: {
      for (std::size_t i = 0; i < block.size(); ++i)
        if (block.digit(i) > 1) {
          out.status = DecodeStatus::bad_redundancy;
          return out;
        }
      out.c = bits_to_natural(block);
      out.corrected = false;
      break;
    }
    case InnerSpec::Kind::reed_muller: {
      auto decoded = rm_decode(*params.inner.rm, block);
      if (!decoded) {
        out.status = DecodeStatus::inner_failed;
        return out;
      }
      out.c = bits_to_natural(*decoded, 0, params.p_bits);
      // Padding bits beyond p_bits must decode to zero.
      for (std::size_t i = params.p_bits; i < decoded->size(); ++i)
        if (decoded->digit(i)) {
          out.status = DecodeStatus::inner_failed;
          return out;
        }
      break;
    }
    case InnerSpec::Kind::replication:
      throw Error("recover_redundancy: replication handled by the bootstrap path");
  }
  if (out.c.is_zero() || out.c >= params.p) {
    out.status = DecodeStatus::bad_redundancy;
    return out;
  }
  // Flag whether the received block differs from a clean re-encoding.
  out.corrected = !same_digits(inner_encode(params, out.c), block);
  return out;
}

inline DecodeOutcome decode_core(const CodecParams& params, const BitString& received) {
  const BitString m_prime = received.slice(0, params.kappa);
  const BitString block = received.slice(params.kappa, params.inner.block_len);

  InnerDecode inner = recover_redundancy(params, block);
  if (inner.status != DecodeStatus::ok) return {inner.status, std::nullopt};

  const Natural cm = redundancy(params, m_prime);
  const Natural s = (cm * mod_inverse(inner.c, params.p)) % params.p;

  if (s == 1) {
    DecodeReport report{m_prime, {}, inner.corrected, std::nullopt, false};
    return {DecodeStatus::ok, std::move(report)};
  }

  auto rec = reconstruct(s, params.p, {params.bound, params.bound});
  if (!rec) return {DecodeStatus::reconstruction_failed, std::nullopt};
  if (rec->value.negative) return {DecodeStatus::negative_numerator, std::nullopt};

  BitCorrections fix;
  if (params.config.variant == Variant::packed) {
    fix = apply_packed_corrections(params, m_prime, rec->value.numerator,
                                   rec->value.denominator);
  } else if (params.config.gamma == 2) {
    Factorization fa = factor_over_table(rec->value.numerator, *params.table, 1);
    Factorization fb = factor_over_table(rec->value.denominator, *params.table, 1);
    fix = apply_bit_corrections(m_prime, fa, fb, params.config.t);
  } else {
    const unsigned cap = params.config.gamma - 1;
    Factorization fa = factor_over_table(rec->value.numerator, *params.table, cap);
    Factorization fb = factor_over_table(rec->value.denominator, *params.table, cap);
    fix = apply_digit_corrections(m_prime, fa, fb, params.config.t, params.config.gamma);
  }
  if (fix.status != DecodeStatus::ok) return {fix.status, std::nullopt};

  DecodeReport report{std::move(fix.message), std::move(fix.positions), inner.corrected,
                      std::nullopt, rec->relaxed};
  return {DecodeStatus::ok, std::move(report)};
}

// Small-prime sweep: relax the numerator bound step by step, keeping the
// product bound 2*A_i*B_i below p, until a candidate passes every validity
// check.  Heuristic by construction; sweep_exhausted reports honest failure.
inline DecodeOutcome decode_small(const CodecParams& params, const BitString& received) {
  const BitString m_prime = received.slice(0, params.kappa);
  const BitString block = received.slice(params.kappa, params.inner.block_len);

  InnerDecode inner = recover_redundancy(params, block);
  if (inner.status != DecodeStatus::ok) return {inner.status, std::nullopt};

  const Natural cm = redundancy(params, m_prime);
  const Natural s = (cm * mod_inverse(inner.c, params.p)) % params.p;

  if (s == 1) {
    DecodeReport report{m_prime, {}, inner.corrected, std::nullopt, false};
    return {DecodeStatus::ok, std::move(report)};
  }

  for (unsigned i = 1;; ++i) {
    const Natural a_bound = Natural(1) << (static_cast<std::size_t>(params.config.u) * i);
    if (a_bound >= params.p) break;
    const Natural b_bound = params.p / (2 * a_bound);
    if (b_bound < 1) break;

    auto rec = reconstruct(s, params.p, {a_bound, b_bound});
    if (!rec || rec->value.negative) continue;
    if (rec->value.numerator * rec->value.denominator > params.ab_cap) continue;

    Factorization fa = factor_over_table(rec->value.numerator, *params.table, 1);
    Factorization fb = factor_over_table(rec->value.denominator, *params.table, 1);
    BitCorrections fix = apply_bit_corrections(m_prime, fa, fb, params.config.t);
    if (fix.status != DecodeStatus::ok) continue;

    DecodeReport report{std::move(fix.message), std::move(fix.positions), inner.corrected, i,
                        false};
    return {DecodeStatus::ok, std::move(report)};
  }
  return {DecodeStatus::sweep_exhausted, std::nullopt};
}

// Quotient-corrects one bootstrap level given a trusted redundancy value.
inline BitCorrections correct_level(const BootLevel& level, const BitString& received,
                                    const Natural& c, unsigned t) {
  BitCorrections out;
  const Natural cm = level_redundancy(level, received);
  const Natural s = (cm * mod_inverse(c, level.p)) % level.p;
  if (s == 1) {
    out.message = received;
    return out;
  }
  auto rec = reconstruct(s, level.p, {level.bound, level.bound});
  if (!rec) {
    out.status = DecodeStatus::reconstruction_failed;
    return out;
  }
  if (rec->value.negative) {
    out.status = DecodeStatus::negative_numerator;
    return out;
  }
  Factorization fa = factor_over_table(rec->value.numerator, *level.table, 1);
  Factorization fb = factor_over_table(rec->value.denominator, *level.table, 1);
  return apply_bit_corrections(received, fa, fb, t);
}

inline DecodeOutcome bootstrap_decode(const CodecParams& params, const BitString& received) {
  const unsigned depth = params.config.depth;
  const unsigned t = params.config.t;

  // Slice the codeword into the message, the bare intermediate redundancy
  // blocks, and the replicated deepest block.
  std::size_t pos = 0;
  const BitString m_prime = received.slice(pos, params.config.k);
  pos += params.config.k;
  std::vector<BitString> blocks;  // levels 1..depth-1
  for (unsigned level = 1; level + 1 <= depth; ++level) {
    blocks.push_back(received.slice(pos, params.levels[level - 1].p_bits));
    pos += params.levels[level - 1].p_bits;
  }
  const BitString rep_block = received.slice(pos, params.inner.block_len);

  const BootLevel& deepest = params.levels.back();
  BitString deep_bits = rep_decode(rep_block, params.inner.copies);
  std::size_t total_fixed = hamming_distance(rep_encode(deep_bits, params.inner.copies), rep_block);
  bool inner_corrected = total_fixed > 0;

  Natural c = bits_to_natural(deep_bits);
  if (c.is_zero() || c >= deepest.p) return {DecodeStatus::bad_redundancy, std::nullopt};

  // Walk the levels inside-out: each corrected block becomes the trusted
  // redundancy for the level above it.
  std::set<std::size_t> message_positions;
  for (unsigned level = depth; level >= 1; --level) {
    const BootLevel& lv = params.levels[level - 1];
    const BitString& lvl_msg = level == 1 ? m_prime : blocks[level - 2];
    BitCorrections fix = correct_level(lv, lvl_msg, c, t);
    if (fix.status != DecodeStatus::ok) return {fix.status, std::nullopt};
    total_fixed += fix.positions.size();
    if (level > 1) {
      inner_corrected = inner_corrected || !fix.positions.empty();
      c = bits_to_natural(fix.message);
      if (c.is_zero() || c >= params.levels[level - 2].p)
        return {DecodeStatus::bad_redundancy, std::nullopt};
    } else {
      message_positions = std::move(fix.positions);
      if (total_fixed > t) return {DecodeStatus::too_many_corrections, std::nullopt};
      DecodeReport report{std::move(fix.message), std::move(message_positions), inner_corrected,
                          std::nullopt, false};
      return {DecodeStatus::ok, std::move(report)};
    }
  }
  throw Error("bootstrap_decode: unreachable");
}

}  // namespace detail

inline BitString encode(const CodecParams& params, const BitString& m) {
  if (m.size() != params.kappa || m.base() != params.config.gamma)
    throw std::invalid_argument("encode: expected " + std::to_string(params.kappa) +
                                " base-" + std::to_string(params.config.gamma) + " symbols");

  BitString codeword(params.config.gamma);
  codeword.append(m);

  if (params.config.variant == Variant::bootstrapped) {
    BitString current = m;
    for (unsigned level = 1; level <= params.config.depth; ++level) {
      const BootLevel& lv = params.levels[level - 1];
      const Natural c = detail::level_redundancy(lv, current);
      BitString bits = BitString::from_bits_of(c, lv.p_bits);
      if (level < params.config.depth)
        codeword.append(bits);
      else
        codeword.append(rep_encode(bits, params.inner.copies));
      current = std::move(bits);
    }
    return codeword;
  }

  const Natural c = redundancy(params, m);
  codeword.append(detail::inner_encode(params, c));
  return codeword;
}

inline DecodeOutcome decode(const CodecParams& params, const BitString& received) {
  if (received.size() != params.codeword_len || received.base() != params.config.gamma)
    throw std::invalid_argument("decode: expected " + std::to_string(params.codeword_len) +
                                " base-" + std::to_string(params.config.gamma) + " symbols");
  switch (params.config.variant) {
    case Variant::basic:
    case Variant::packed:
      return detail::decode_core(params, received);
    case Variant::small_prime:
      return detail::decode_small(params, received);
    case Variant::bootstrapped:
      return detail::bootstrap_decode(params, received);
  }
  throw Error("decode: bad variant");
}

inline BitString bootstrap_encode(const CodecParams& params, const BitString& m) {
  if (params.config.variant != Variant::bootstrapped)
    throw std::invalid_argument("bootstrap_encode: wrong variant");
  return encode(params, m);
}

inline DecodeOutcome bootstrap_decode(const CodecParams& params, const BitString& received) {
  if (params.config.variant != Variant::bootstrapped)
    throw std::invalid_argument("bootstrap_decode: wrong variant");
  return decode(params, received);
}

}  // namespace nsecc
