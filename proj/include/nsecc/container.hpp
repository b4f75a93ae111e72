#pragma once

#include <nsecc/codec.hpp>

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace nsecc {

struct BadContainer : Error {
  using Error::Error;
};

// On-disk codeword container.  Layout (all integers big-endian):
//
//   magic   "NSEC1"                        5 bytes
//   variant basic=0 small=1 packed=2 boot=3  1 byte
//   k                                      4 bytes
//   t                                      2 bytes
//   gamma                                  2 bytes
//   u                                      2 bytes
//   depth                                  1 byte
//   override flag                          1 byte
//   [if flag] modulus length L             4 bytes
//   [if flag] modulus, big-endian          L bytes
//   payload symbols                        rest
//
// Binary payloads pack eight symbols per byte, first symbol in the most
// significant bit; wider alphabets spend one byte per symbol.  Trailing pad
// bits are zero.

namespace detail {

inline void put_u8(std::ostream& os, std::uint8_t v) { os.put(static_cast<char>(v)); }

inline void put_be(std::ostream& os, std::uint64_t v, unsigned bytes) {
  for (unsigned i = bytes; i-- > 0;)
    os.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline std::uint64_t get_be(std::istream& is, unsigned bytes) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < bytes; ++i) {
    const int ch = is.get();
    if (ch == std::char_traits<char>::eof()) throw BadContainer("container: truncated header");
    v = (v << 8) | static_cast<std::uint8_t>(ch);
  }
  return v;
}

inline std::vector<std::uint8_t> natural_to_bytes(const Natural& x) {
  std::vector<std::uint8_t> out;
  Natural v = x;
  while (v > 0) {
    out.insert(out.begin(), static_cast<std::uint8_t>(v & 0xff));
    v >>= 8;
  }
  if (out.empty()) out.push_back(0);
  return out;
}

inline Natural bytes_to_natural(const std::vector<std::uint8_t>& bytes) {
  Natural v = 0;
  for (std::uint8_t b : bytes) v = (v << 8) | b;
  return v;
}

}  // namespace detail

inline void write_codeword(std::ostream& os, const CodecConfig& cfg, const BitString& payload) {
  if (payload.base() != cfg.gamma)
    throw std::invalid_argument("write_codeword: payload base mismatch");
  os.write("NSEC1", 5);
  detail::put_u8(os, static_cast<std::uint8_t>(cfg.variant));
  detail::put_be(os, cfg.k, 4);
  detail::put_be(os, cfg.t, 2);
  detail::put_be(os, cfg.gamma, 2);
  detail::put_be(os, cfg.u, 2);
  detail::put_u8(os, static_cast<std::uint8_t>(cfg.depth));
  detail::put_u8(os, cfg.p_override ? 1 : 0);
  if (cfg.p_override) {
    auto bytes = detail::natural_to_bytes(*cfg.p_override);
    detail::put_be(os, bytes.size(), 4);
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }
  if (cfg.gamma == 2) {
    std::uint8_t acc = 0;
    unsigned fill = 0;
    for (std::size_t i = 0; i < payload.size(); ++i) {
      acc = static_cast<std::uint8_t>((acc << 1) | payload.digit(i));
      if (++fill == 8) {
        detail::put_u8(os, acc);
        acc = 0;
        fill = 0;
      }
    }
    if (fill) detail::put_u8(os, static_cast<std::uint8_t>(acc << (8 - fill)));
  } else {
    for (std::size_t i = 0; i < payload.size(); ++i) detail::put_u8(os, payload.digit(i));
  }
  if (!os) throw BadContainer("container: write failed");
}

struct CodewordFile {
  CodecConfig config;
  std::vector<std::uint8_t> payload_bytes;
};

inline CodewordFile read_codeword(std::istream& is) {
  char magic[5];
  is.read(magic, 5);
  if (is.gcount() != 5 || std::string(magic, 5) != "NSEC1")
    throw BadContainer("container: bad magic");
  CodewordFile out;
  const std::uint64_t variant = detail::get_be(is, 1);
  if (variant > 3) throw BadContainer("container: unknown variant code");
  out.config.variant = static_cast<Variant>(variant);
  out.config.k = static_cast<std::size_t>(detail::get_be(is, 4));
  out.config.t = static_cast<unsigned>(detail::get_be(is, 2));
  out.config.gamma = static_cast<unsigned>(detail::get_be(is, 2));
  out.config.u = static_cast<unsigned>(detail::get_be(is, 2));
  out.config.depth = static_cast<unsigned>(detail::get_be(is, 1));
  const std::uint64_t flag = detail::get_be(is, 1);
  if (flag > 1) throw BadContainer("container: bad override flag");
  if (flag) {
    const std::uint64_t len = detail::get_be(is, 4);
    std::vector<std::uint8_t> bytes(len);
    is.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(len));
    if (static_cast<std::uint64_t>(is.gcount()) != len)
      throw BadContainer("container: truncated modulus");
    out.config.p_override = detail::bytes_to_natural(bytes);
  }
  char ch;
  while (is.get(ch)) out.payload_bytes.push_back(static_cast<std::uint8_t>(ch));
  return out;
}

// Unpacks the payload of a container into symbols, validating the byte
// count against the expected codeword length.
inline BitString unpack_payload(const CodewordFile& file, std::size_t expected_len) {
  const unsigned gamma = file.config.gamma;
  if (gamma == 2) {
    const std::size_t need = (expected_len + 7) / 8;
    if (file.payload_bytes.size() != need)
      throw BadContainer("container: payload is " + std::to_string(file.payload_bytes.size()) +
                         " bytes, expected " + std::to_string(need));
    BitString out(2, expected_len);
    for (std::size_t i = 0; i < expected_len; ++i)
      out.set_digit(i, (file.payload_bytes[i / 8] >> (7 - i % 8)) & 1u);
    // Trailing pad bits must be zero.
    for (std::size_t i = expected_len; i < need * 8; ++i)
      if ((file.payload_bytes[i / 8] >> (7 - i % 8)) & 1u)
        throw BadContainer("container: nonzero padding");
    return out;
  }
  if (file.payload_bytes.size() != expected_len)
    throw BadContainer("container: payload is " + std::to_string(file.payload_bytes.size()) +
                       " bytes, expected " + std::to_string(expected_len));
  BitString out(gamma, expected_len);
  for (std::size_t i = 0; i < expected_len; ++i) {
    if (file.payload_bytes[i] >= gamma) throw BadContainer("container: symbol out of range");
    out.set_digit(i, file.payload_bytes[i]);
  }
  return out;
}

// Canonical parameter listing: fixed key order, decimal integers, one
// key=value per line.  Regenerating parameters from the same configuration
// must reproduce this file byte for byte.
inline void write_params_file(std::ostream& os, const CodecParams& params) {
  const CodecConfig& cfg = params.config;
  os << "format=nsecc-params-1\n";
  os << "variant=" << to_string(cfg.variant) << "\n";
  os << "k=" << cfg.k << "\n";
  os << "t=" << cfg.t << "\n";
  os << "gamma=" << cfg.gamma << "\n";
  os << "u=" << cfg.u << "\n";
  os << "depth=" << cfg.depth << "\n";
  os << "kappa=" << params.kappa << "\n";
  os << "p_override=" << (cfg.p_override ? 1 : 0) << "\n";
  os << "p_bits=" << params.p_bits << "\n";
  os << "p=" << params.p.str() << "\n";
  os << "table_size=" << params.table->count() << "\n";
  switch (params.inner.kind) {
    case InnerSpec::Kind::reed_muller:
      os << "inner=rm:" << params.inner.rm->N << ":" << params.inner.rm->r << "\n";
      break;
    case InnerSpec::Kind::replication:
      os << "inner=rep:" << params.inner.copies << "\n";
      break;
    case InnerSpec::Kind::identity:
      os << "inner=identity\n";
      break;
  }
  for (std::size_t i = 0; i < params.levels.size(); ++i) {
    const BootLevel& lv = params.levels[i];
    os << "level" << (i + 1) << ".k=" << lv.message_bits << "\n";
    os << "level" << (i + 1) << ".p_bits=" << lv.p_bits << "\n";
    os << "level" << (i + 1) << ".p=" << lv.p.str() << "\n";
  }
  os << "n_prime=" << params.codeword_len << "\n";
}

}  // namespace nsecc
