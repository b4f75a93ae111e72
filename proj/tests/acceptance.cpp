// Acceptance gate for the codec.  Each criterion prints exactly one
// [PASS]/[FAIL] line; the process exits nonzero if any criterion fails or
// overruns its time budget.  Run via ctest or directly.

#include <nsecc/channel.hpp>
#include <nsecc/codec.hpp>
#include <nsecc/ratrec.hpp>
#include <nsecc/reed_muller.hpp>
#include <nsecc/sizes.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace nsecc;

namespace {

struct CheckFailed {
  std::string detail;
};

void expect(bool cond, const std::string& detail) {
  if (!cond) throw CheckFailed{detail};
}

template <typename A, typename B>
void expect_eq(const A& got, const B& want, const std::string& what) {
  if (!(got == want)) {
    std::ostringstream ss;
    ss << what << ": got " << got << ", want " << want;
    throw CheckFailed{ss.str()};
  }
}

BitString random_message(std::mt19937_64& gen, std::size_t len, unsigned base = 2) {
  BitString out(base);
  for (std::size_t i = 0; i < len; ++i)
    out.push_back(static_cast<uint8_t>(gen() % base));
  return out;
}

// ---- criterion 1: worked-example replay -------------------------------

void c1_worked_example(std::vector<std::string>& info) {
  CodecConfig cfg{Variant::basic, 10, 2};
  cfg.p_override = Natural(707293);
  cfg.identity_inner = true;
  CodecParams params = gen_params(cfg);

  const BitString m = BitString::from_string("1100100111");
  expect_eq(redundancy(params, m), Natural(129125), "redundancy of 1100100111");

  BitString cw = encode(params, m);
  expect_eq(cw.size(), std::size_t{30}, "codeword length");

  BitString noisy = flip_positions(cw, {7, 8});
  const BitString m_prime = noisy.slice(0, 10);
  expect_eq(m_prime.to_string(), std::string("1100101011"), "disturbed message");
  expect_eq(redundancy(params, m_prime), Natural(41081), "redundancy of disturbed message");

  const Natural s = (Natural(41081) * mod_inverse(Natural(129125), params.p)) % params.p;
  expect_eq(s, Natural(632842), "decode quotient");

  auto rec = reconstruct(s, params.p, {params.bound, params.bound});
  expect(rec.has_value(), "reconstruction found no candidate");
  expect_eq(rec->value.numerator, Natural(17), "numerator");
  expect_eq(rec->value.denominator, Natural(19), "denominator");
  expect(!rec->value.negative, "sign should be positive");
  expect(rec->relaxed, "this modulus sits below the uniqueness window");

  DecodeOutcome outcome = decode(params, noisy);
  expect(outcome.ok(), "decode failed: " + to_string(outcome.status));
  expect_eq(outcome.report->message.to_string(), std::string("1100100111"), "decoded message");
  expect(outcome.report->corrected_positions == std::set<std::size_t>{7, 8},
         "corrected positions should be {7, 8}");
  info.push_back("quotient 632842 -> 17/19, corrections at {7, 8}");
}

// ---- criterion 2: rational reconstruction vs exhaustive oracle --------

void c2_reconstruction_oracle(std::vector<std::string>& info) {
  std::mt19937_64 gen(20260823);
  std::size_t negatives = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Natural base = 100'000 + gen() % 900'000;  // keeps p under 2^20
    const Natural p = next_prime_above(base, 4 * base);
    expect(p < (Natural(1) << 20), "modulus escaped the 20-bit range");

    const Natural A = 1 + gen() % 500;
    Natural bcap = (p - 1) / (2 * A);
    if (bcap > 900) bcap = 900;
    const Natural B = 1 + gen() % static_cast<std::uint64_t>(bcap);
    expect(2 * A * B < p, "window invariant violated by construction");

    Natural a = 1 + gen() % static_cast<std::uint64_t>(A);
    Natural b = 1 + gen() % static_cast<std::uint64_t>(B);
    while (boost::multiprecision::gcd(a, b) != 1) {
      a = 1 + gen() % static_cast<std::uint64_t>(A);
      b = 1 + gen() % static_cast<std::uint64_t>(B);
    }
    const bool negative = (a != 0) && (gen() & 1);
    if (negative) ++negatives;

    Natural s = (a * mod_inverse(b, p)) % p;
    if (negative) s = (p - s) % p;

    auto fast = reconstruct(s, p, {A, B});
    auto slow = oracle_reconstruct(s, p, {A, B});
    expect(fast.has_value() && slow.has_value(),
           "planted fraction not found at trial " + std::to_string(trial));
    for (const Fraction& f : {fast->value, *slow}) {
      expect(f.numerator == a && f.denominator == b && f.negative == negative,
             "descent and oracle disagree with the planted fraction at trial " +
                 std::to_string(trial));
    }
  }
  info.push_back("1000 planted fractions, " + std::to_string(negatives) +
                 " negative, descent == oracle == planted");
}

// ---- criterion 3: inner-code family and decode radius -----------------

void c3_inner_code(std::vector<std::string>& info) {
  const struct {
    unsigned N, r;
    std::size_t n, k, t;
  } family[] = {
      {4, 2, 16, 11, 1},      {6, 3, 64, 42, 3},     {7, 4, 128, 99, 3},
      {8, 4, 256, 163, 7},    {9, 5, 512, 382, 7},   {11, 5, 2048, 1024, 31},
      {13, 7, 8192, 5812, 31}, {15, 6, 32768, 9949, 255}, {17, 8, 131072, 65536, 255},
  };
  for (const auto& row : family) {
    RMParams rm = rm_params(row.N, row.r);
    expect(rm.n == row.n && rm.k == row.k && rm.t == row.t,
           "family entry (" + std::to_string(row.N) + "," + std::to_string(row.r) +
               ") has unexpected dimensions");
  }

  // Exhaustive at the smallest size: every message, clean and all single flips.
  {
    RMParams rm = rm_params(3, 1);
    for (std::uint64_t w = 0; w < 16; ++w) {
      BitString msg = BitString::from_bits_of(Natural(w), 4);
      BitString cw = rm_encode(rm, msg);
      auto clean = rm_decode(rm, cw);
      expect(clean && *clean == msg, "clean decode failed at RM(1,3)");
      for (std::size_t pos = 1; pos <= 8; ++pos) {
        auto dec = rm_decode(rm, flip_positions(cw, {pos}));
        expect(dec && *dec == msg, "single-flip decode failed at RM(1,3)");
      }
    }
  }

  // Exhaustive at the next size up: all 2048 messages x all 16 single flips.
  {
    RMParams rm = rm_params(4, 2);
    for (std::uint64_t w = 0; w < 2048; ++w) {
      BitString msg = BitString::from_bits_of(Natural(w), 11);
      BitString cw = rm_encode(rm, msg);
      for (std::size_t pos = 1; pos <= 16; ++pos) {
        auto dec = rm_decode(rm, flip_positions(cw, {pos}));
        expect(dec && *dec == msg, "single-flip decode failed at RM(2,4)");
      }
    }
  }

  // Random words at the radius used by the large instances.
  {
    RMParams rm = rm_params(11, 5);
    std::mt19937_64 gen(0xace);
    for (int trial = 0; trial < 1000; ++trial) {
      BitString msg = random_message(gen, rm.k);
      BitString cw = rm_encode(rm, msg);
      BitString noisy = corrupt(cw, {gen(), gen() % (rm.t + 1)});
      auto dec = rm_decode(rm, noisy);
      expect(dec && *dec == msg, "decode failed at RM(5,11), trial " + std::to_string(trial));
    }
  }
  info.push_back("9 family entries, 16*9 + 2048*16 + 1000 decodes at radius");
}

// ---- criterion 4: end-to-end correction at full radius ----------------

void c4_full_radius(std::vector<std::string>& info) {
  struct Job {
    const char* label;
    CodecConfig cfg;
    std::uint64_t seed;
  };
  CodecConfig basic{Variant::basic, 1024, 7};
  CodecConfig packed{Variant::packed, 1024, 7};
  packed.gamma = 3;
  CodecConfig small{Variant::small_prime, 1024, 7};
  small.u = 50;
  const Job jobs[] = {
      {"basic", basic, 0xb001},
      {"packed", packed, 0xb002},
      {"small", small, 0xb003},
  };
  std::ostringstream summary;
  for (const Job& job : jobs) {
    CodecParams params = gen_params(job.cfg);
    std::mt19937_64 gen(job.seed);
    for (int trial = 0; trial < 500; ++trial) {
      BitString msg = random_message(gen, params.kappa, job.cfg.gamma);
      BitString cw = encode(params, msg);
      BitString noisy = corrupt(cw, {gen(), params.config.t});
      DecodeOutcome outcome = decode(params, noisy);
      expect(outcome.ok(), std::string(job.label) + " decode failed at trial " +
                               std::to_string(trial) + ": " + to_string(outcome.status));
      expect(outcome.report->message == msg,
             std::string(job.label) + " decoded the wrong message at trial " +
                 std::to_string(trial));
    }
    if (summary.tellp() > 0) summary << ", ";
    summary << job.label << " 500/500";
  }
  info.push_back(summary.str() + " at weight exactly 7");
}

// ---- criteria 5 and 8: reference sizes and expansion crossovers -------

const std::vector<BenchRow>& reference_rows() {
  static const std::vector<BenchRow> rows = [] {
    std::vector<BenchRequest> req = {{382, 7}, {5812, 31}, {65536, 255}};
    return bench_expansion(req, {});
  }();
  return rows;
}

void c5_reference_sizes(std::vector<std::string>& info) {
  const std::vector<BenchRow>& rows = reference_rows();
  expect(rows.size() == 3, "expected three reference rows");
  for (const BenchRow& row : rows)
    expect(!row.error, "row k=" + std::to_string(row.request.k) +
                           " failed: " + row.error.value_or(""));

  const BenchRow& r0 = rows[0];
  expect_eq(r0.p_bits_lemma, std::size_t{157}, "k=382 closed-form bits");
  expect(r0.p_bits_exact.has_value(), "k=382 exact modulus missing");
  expect_eq(*r0.p_bits_exact, std::size_t{161}, "k=382 exact bits");
  expect_eq(r0.n_prime, std::size_t{638}, "k=382 codeword length");

  const BenchRow& r1 = rows[1];
  expect(r1.p_bits_lemma >= 967 && r1.p_bits_lemma <= 971,
         "k=5812 closed-form bits out of range: " + std::to_string(r1.p_bits_lemma));
  expect(r1.p_bits_exact.has_value(), "k=5812 exact modulus missing");
  expect_eq(*r1.p_bits_exact, std::size_t{981}, "k=5812 exact bits");
  expect(*r1.p_bits_exact <= 1024, "k=5812 modulus must fit the inner dimension");
  expect_eq(r1.n_prime, std::size_t{7860}, "k=5812 codeword length");
  expect(r1.note.find("short by") != std::string::npos,
         "k=5812 row must annotate the closed-form shortfall");

  const BenchRow& r2 = rows[2];
  expect(r2.p_bits_lemma >= 9930 && r2.p_bits_lemma <= 9932,
         "k=65536 closed-form bits out of range: " + std::to_string(r2.p_bits_lemma));
  expect(!r2.p_bits_exact.has_value(), "k=65536 exact generation should be skipped");
  expect_eq(r2.p_bits_sizing, std::size_t{9931}, "k=65536 sizing bits");
  expect_eq(r2.n_prime, std::size_t{98304}, "k=65536 codeword length");
  expect(!r2.note.empty(), "k=65536 row must carry an annotation");

  info.push_back("k=382: 161 bits, n'=638; k=5812: 981 bits, n'=7860");
  info.push_back("k=65536: lemma-sized (" + std::to_string(r2.p_bits_sizing) +
                 " bits), n'=98304");
  info.push_back("k=5812 note: " + r1.note);
  info.push_back("k=65536 note: " + r2.note);
}

void c8_crossovers(std::vector<std::string>& info) {
  const std::vector<BenchRow>& rows = reference_rows();
  expect(rows.size() == 3 && !rows[0].error && !rows[1].error && !rows[2].error,
         "reference rows unavailable");
  const auto need = [](const BenchRow& row) {
    expect(row.rm_baseline_n.has_value(),
           "no stand-alone baseline for k=" + std::to_string(row.request.k));
    return *row.rm_baseline_n;
  };
  expect_eq(need(rows[0]), std::size_t{512}, "k=382 baseline");
  expect(rows[0].n_prime > *rows[0].rm_baseline_n,
         "k=382 should still lose to the bare inner code");
  expect_eq(need(rows[1]), std::size_t{8192}, "k=5812 baseline");
  expect(rows[1].n_prime < *rows[1].rm_baseline_n, "k=5812 should beat the bare inner code");
  expect_eq(need(rows[2]), std::size_t{131072}, "k=65536 baseline");
  expect(rows[2].n_prime < *rows[2].rm_baseline_n, "k=65536 should beat the bare inner code");
  info.push_back("638 > 512, 7860 < 8192, 98304 < 131072");
}

// ---- criteria 6 and 7: million-symbol moduli --------------------------

std::shared_ptr<const PrimeTable> million_table() {
  static std::shared_ptr<const PrimeTable> table =
      std::make_shared<const PrimeTable>(build_prime_table(3'000'000));
  return table;
}

void c6_packed_million(std::vector<std::string>& info) {
  auto table = million_table();
  expect_eq(table->prime(1'000'000), std::uint64_t{15485863}, "millionth prime");

  // 1584962 bits is the largest payload a million ternary digits can hold.
  CodecConfig cfg{Variant::packed, 1584962, 7};
  cfg.gamma = 3;
  CodecParams params = gen_params(cfg, table);
  expect_eq(params.kappa, std::size_t{1'000'000}, "ternary digit count");
  expect(params.p_bits >= 409 && params.p_bits <= 411,
         "packed modulus out of range: " + std::to_string(params.p_bits) + " bits");
  info.push_back("kappa = 10^6 ternary digits, modulus " +
                 std::to_string(params.p_bits) + " bits");
}

void c7_basic_million(std::vector<std::string>& info) {
  auto table = million_table();
  expect_eq(table->prime(1'584'963), std::uint64_t{25325609}, "prime #1584963");

  CodecConfig cfg{Variant::basic, 1584963, 7};
  CodecParams params = gen_params(cfg, table);
  expect_eq(params.p_bits, std::size_t{346}, "basic modulus bits");
  info.push_back("p_k = 25325609, modulus 346 bits");
}

// ---- criterion 9: bootstrapped chain ----------------------------------

void c9_bootstrap(std::vector<std::string>& info) {
  CodecConfig cfg{Variant::bootstrapped, 4096, 3};
  cfg.depth = 2;
  CodecParams params = gen_params(cfg);
  expect_eq(params.levels.size(), std::size_t{2}, "level count");
  expect_eq(params.levels[0].p_bits, std::size_t{93}, "level 1 modulus bits");
  expect_eq(params.levels[1].p_bits, std::size_t{55}, "level 2 modulus bits");
  expect(params.levels[1].p_bits < params.levels[0].p_bits, "levels must shrink");
  expect_eq(params.codeword_len, std::size_t{4574}, "chained codeword length");

  std::mt19937_64 gen(0x9001);
  for (int trial = 0; trial < 100; ++trial) {
    BitString msg = random_message(gen, 4096);
    BitString cw = encode(params, msg);
    BitString noisy = corrupt(cw, {gen(), gen() % 4});
    DecodeOutcome outcome = decode(params, noisy);
    expect(outcome.ok(), "bootstrap decode failed at trial " + std::to_string(trial) +
                             ": " + to_string(outcome.status));
    expect(outcome.report->message == msg,
           "bootstrap decoded the wrong message at trial " + std::to_string(trial));
  }
  info.push_back("levels 93 -> 55 bits, n' = 4574, 100/100 at weight <= 3");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_seconds;
    std::function<void(std::vector<std::string>&)> run;
  };
  const Criterion criteria[] = {
      {"worked-example replay", 1.0, c1_worked_example},
      {"rational reconstruction vs exhaustive oracle", 10.0, c2_reconstruction_oracle},
      {"inner-code family and decode radius", 60.0, c3_inner_code},
      {"full-radius correction, three variants", 120.0, c4_full_radius},
      {"reference instance sizes", 60.0, c5_reference_sizes},
      {"packed modulus at a million ternary digits", 90.0, c6_packed_million},
      {"basic modulus at megabit scale", 120.0, c7_basic_million},
      {"expansion crossovers", 5.0, c8_crossovers},
      {"bootstrapped chain", 60.0, c9_bootstrap},
  };

  int failures = 0;
  int index = 0;
  for (const Criterion& crit : criteria) {
    ++index;
    std::vector<std::string> info;
    std::string failure;
    const auto start = std::chrono::steady_clock::now();
    try {
      crit.run(info);
    } catch (const CheckFailed& chk) {
      failure = chk.detail;
    } catch (const std::exception& ex) {
      failure = std::string("exception: ") + ex.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (failure.empty() && elapsed > crit.limit_seconds) {
      std::ostringstream ss;
      ss << "time budget exceeded: " << elapsed << "s > " << crit.limit_seconds << "s";
      failure = ss.str();
    }
    const bool passed = failure.empty();
    if (!passed) ++failures;
    std::printf("[%s] %d/9 %s (%.2fs, limit %.0fs)\n", passed ? "PASS" : "FAIL", index,
                crit.name, elapsed, crit.limit_seconds);
    for (const std::string& line : info) std::printf("       %s\n", line.c_str());
    if (!passed) std::printf("       !! %s\n", failure.c_str());
    std::fflush(stdout);
  }
  if (failures) {
    std::printf("%d of 9 criteria failed\n", failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
