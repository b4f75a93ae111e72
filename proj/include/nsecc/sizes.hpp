#pragma once

#include <nsecc/codec.hpp>

#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace nsecc {

struct SizePrediction {
  std::size_t p_bits_lemma = 0;                // closed-form estimate of |p|
  std::optional<std::size_t> p_bits_window;    // bit length of the exact window floor
  std::optional<std::size_t> p_bits_exact;     // bit length of the generated modulus
};

struct SizeOptions {
  std::size_t exact_ceiling_bits = 2000;  // skip prime generation above this size
  bool want_window = true;
  bool want_exact = true;
};

// Closed-form modulus-size estimates.  The n-th prime is approximated from
// above by n(ln n + ln ln n), whose base-2 log drives every bound; the
// leading 1 accounts for the factor-2 window floor.
inline std::size_t lemma_bits(std::size_t k, unsigned t, unsigned gamma, Variant variant,
                              unsigned u = 1) {
  if (k < 2) throw std::invalid_argument("lemma_bits: k too small");
  const auto log2_nth_prime = [](long double n) {
    const long double ln = std::log(n);
    long double v = n * (ln + std::log(ln));
    if (v < 2.0L) v = 2.0L;
    return std::log2(v);
  };
  const long double lk = static_cast<long double>(k);
  switch (variant) {
    case Variant::basic: {
      if (gamma == 2)
        return static_cast<std::size_t>(
            std::floor(1.0L + 2.0L * t * std::log2(lk * std::log(lk))));
      const std::size_t kappa = digit_count(k, gamma);
      const long double lkap = static_cast<long double>(kappa);
      return static_cast<std::size_t>(std::floor(
          1.0L + 2.0L * t * (gamma - 1) * std::log2(lkap * std::log(lkap))));
    }
    case Variant::small_prime:
      return static_cast<std::size_t>(
          std::floor(1.0L + u + t * std::log2(lk * std::log(lk))));
    case Variant::packed: {
      const std::size_t kappa = digit_count(k, gamma);
      if (kappa <= t) throw std::invalid_argument("lemma_bits: packed needs kappa > t");
      long double sum = 0.0L;
      for (std::size_t i = kappa - t; i <= kappa; ++i)
        sum += log2_nth_prime(static_cast<long double>(i) * gamma);
      return static_cast<std::size_t>(std::floor(1.0L + 2.0L * sum));
    }
    case Variant::bootstrapped:
      // Outermost level dominates; identical to the binary basic bound.
      return static_cast<std::size_t>(
          std::floor(1.0L + 2.0L * t * std::log2(lk * std::log(lk))));
  }
  throw std::invalid_argument("lemma_bits: bad variant");
}

// Predicts modulus sizes at three levels of effort: closed form, exact
// window floor (needs the prime table), and actual generation (gated by the
// ceiling, since huge moduli are expensive to certify).
inline SizePrediction predict_sizes(std::size_t k, unsigned t, unsigned gamma, Variant variant,
                                    unsigned u = 1, const SizeOptions& opts = {}) {
  SizePrediction out;
  out.p_bits_lemma = lemma_bits(k, t, gamma, variant, u);
  if (!opts.want_window) return out;

  CodecConfig cfg{variant, k, t, gamma, u, 1, std::nullopt, false};
  if (variant == Variant::bootstrapped) cfg.depth = 1;

  // Window floor, computed exactly from the real prime table.
  std::size_t table_size = 0;
  std::size_t kappa = (gamma == 2) ? k : digit_count(k, gamma);
  switch (variant) {
    case Variant::basic:
      table_size = kappa;
      break;
    case Variant::small_prime:
    case Variant::bootstrapped:
      table_size = k;
      break;
    case Variant::packed:
      table_size = kappa * gamma;
      break;
  }
  auto table = std::make_shared<const PrimeTable>(build_prime_table(table_size));

  Natural window_floor;
  switch (variant) {
    case Variant::basic:
      window_floor =
          gamma == 2 ? 2 * pow_nat(Natural(table->prime(k)), 2 * t)
                     : 2 * pow_nat(Natural(table->prime(kappa)), 2 * t * (gamma - 1));
      break;
    case Variant::small_prime:
      window_floor = (Natural(1) << u) * pow_nat(Natural(table->prime(k)), t);
      break;
    case Variant::packed: {
      Natural f = 1;
      for (std::size_t i = kappa - t; i <= kappa; ++i) f *= table->prime(i * gamma);
      window_floor = 2 * f * f;
      break;
    }
    case Variant::bootstrapped:
      window_floor = 2 * pow_nat(Natural(table->prime(k)), 2 * t);
      break;
  }
  out.p_bits_window = bit_length(window_floor);

  if (opts.want_exact && *out.p_bits_window <= opts.exact_ceiling_bits) {
    if (variant == Variant::bootstrapped) {
      const Natural p = next_prime_above(window_floor, 2 * window_floor);
      out.p_bits_exact = bit_length(p);
    } else {
      CodecParams params = gen_params(cfg, table);
      out.p_bits_exact = params.p_bits;
    }
  }
  return out;
}

struct BenchRequest {
  std::size_t k = 0;
  unsigned t = 0;
  Variant variant = Variant::basic;
  unsigned gamma = 2;
  unsigned u = 1;
};

struct BenchRow {
  BenchRequest request;
  std::size_t p_bits_lemma = 0;
  std::optional<std::size_t> p_bits_window;
  std::optional<std::size_t> p_bits_exact;
  std::size_t p_bits_sizing = 0;  // the figure the inner code was chosen for
  std::size_t inner_n = 0;
  std::size_t n_prime = 0;
  std::size_t rho_num = 0;  // expansion rate n'/k, reduced
  std::size_t rho_den = 0;
  std::optional<std::size_t> rm_baseline_n;  // cheapest stand-alone RM hosting (k, t)
  std::string note;
  std::optional<std::string> error;
};

// Cheapest Reed-Muller family length carrying k data bits at radius t with
// no outer code at all; the comparison baseline for the expansion table.
inline std::optional<std::size_t> rm_baseline(std::size_t k, std::size_t t) {
  for (unsigned N = 3; N <= 17; ++N) {
    std::size_t dim = 1;
    std::uint64_t binom = 1;
    for (unsigned r = 1; r + 2 <= N; ++r) {
      binom = binom * (N - r + 1) / r;
      dim += static_cast<std::size_t>(binom);
      const std::size_t tr = (std::size_t{1} << (N - r - 1)) - 1;
      if (dim >= k && tr >= t) return std::size_t{1} << N;
    }
  }
  return std::nullopt;
}

inline std::vector<BenchRow> bench_expansion(std::span<const BenchRequest> requests,
                                             const SizeOptions& opts = {}) {
  std::vector<BenchRow> rows;
  rows.reserve(requests.size());
  for (const BenchRequest& req : requests) {
    BenchRow row;
    row.request = req;
    try {
      SizePrediction pred = predict_sizes(req.k, req.t, req.gamma, req.variant, req.u, opts);
      row.p_bits_lemma = pred.p_bits_lemma;
      row.p_bits_window = pred.p_bits_window;
      row.p_bits_exact = pred.p_bits_exact;
      row.p_bits_sizing = pred.p_bits_exact.value_or(pred.p_bits_lemma);
      if (!pred.p_bits_exact && pred.p_bits_window) {
        std::ostringstream note;
        note << "exact modulus generation skipped (window floor " << *pred.p_bits_window
             << " bits > ceiling " << opts.exact_ceiling_bits << "); lemma sizing used";
        row.note = note.str();
      }
      if (pred.p_bits_exact && *pred.p_bits_exact > pred.p_bits_lemma) {
        std::ostringstream note;
        note << "closed-form estimate short by " << (*pred.p_bits_exact - pred.p_bits_lemma)
             << " bits (" << pred.p_bits_lemma << " vs " << *pred.p_bits_exact << " exact)";
        row.note = note.str();
      }

      const std::size_t kappa = req.gamma == 2 ? req.k : digit_count(req.k, req.gamma);
      if (req.variant == Variant::bootstrapped) {
        CodecParams params = gen_params(CodecConfig{req.variant, req.k, req.t, 2, 1, 1});
        row.inner_n = params.codeword_len - req.k;
        row.n_prime = params.codeword_len;
      } else {
        RMParams inner = choose_inner_code(row.p_bits_sizing, req.t);
        row.inner_n = inner.n;
        row.n_prime = kappa + inner.n;
        if (pred.p_bits_window && *pred.p_bits_window > inner.k) {
          if (!row.note.empty()) row.note += "; ";
          std::ostringstream note;
          note << "window floor " << *pred.p_bits_window << " bits exceeds inner dimension "
               << inner.k;
          row.note += note.str();
        }
      }
      const std::size_t g = std::gcd(row.n_prime, req.k);
      row.rho_num = row.n_prime / g;
      row.rho_den = req.k / g;
      row.rm_baseline_n = rm_baseline(req.k, req.t);
    } catch (const std::exception& ex) {
      row.error = ex.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void write_bench_tsv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "k\tt\tvariant\tgamma\tu\tp_bits_lemma\tp_bits_window\tp_bits_exact\tp_bits_sizing"
     << "\tinner_n\tn_prime\trho\trm_baseline_n\tnote\n";
  for (const BenchRow& row : rows) {
    os << row.request.k << '\t' << row.request.t << '\t' << to_string(row.request.variant)
       << '\t' << row.request.gamma << '\t' << row.request.u << '\t';
    if (row.error) {
      os << "-\t-\t-\t-\t-\t-\t-\t-\terror: " << *row.error << '\n';
      continue;
    }
    os << row.p_bits_lemma << '\t';
    if (row.p_bits_window) os << *row.p_bits_window;
    else os << '-';
    os << '\t';
    if (row.p_bits_exact) os << *row.p_bits_exact;
    else os << '-';
    os << '\t' << row.p_bits_sizing << '\t' << row.inner_n << '\t' << row.n_prime << '\t'
       << row.rho_num << '/' << row.rho_den << '\t';
    if (row.rm_baseline_n) os << *row.rm_baseline_n;
    else os << '-';
    os << '\t' << (row.note.empty() ? "-" : row.note) << '\n';
  }
}

// Built-in reference points for the inner-code family table.
inline std::vector<std::pair<unsigned, unsigned>> rm_reference_pairs() {
  return {{4, 2}, {6, 3}, {7, 4}, {8, 4}, {9, 5}, {11, 5}, {13, 7}, {15, 6}, {17, 8}};
}

inline void write_rm_table_tsv(std::ostream& os) {
  os << "N\tr\tn\tk\tt\n";
  for (auto [N, r] : rm_reference_pairs()) {
    RMParams pr = rm_params(N, r);
    os << N << '\t' << r << '\t' << pr.n << '\t' << pr.k << '\t' << pr.t << '\n';
  }
}

}  // namespace nsecc
