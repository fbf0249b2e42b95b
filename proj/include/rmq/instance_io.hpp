#pragma once
#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>

#include "rmq/instance.hpp"

namespace rmq {

// Instance text format, one instance per file:
//   RMQ q l w m seed
//   planted j_0 j_1 ... j_{w-1}        (optional; positions 1-based)
//   c | hex(linear bits) | hex(cross bits)   -- one line per polynomial
// Hex is lowercase with little-endian bytes: byte 0 carries bits 0..7 of the
// documented bit order (linear: flat variable index; cross: block pair
// (i1<i2) lexicographic, then (j1,j2) row-major).

namespace detail {

inline std::string bits_to_hex(const std::vector<std::uint64_t>& v, std::size_t nbits) {
  static const char* digits = "0123456789abcdef";
  const std::size_t nbytes = (nbits + 7) / 8;
  std::string s;
  s.reserve(nbytes * 2);
  for (std::size_t b = 0; b < nbytes; ++b) {
    const std::uint8_t byte =
        b / 8 < v.size() ? static_cast<std::uint8_t>(v[b / 8] >> ((b % 8) * 8)) : 0;
    s.push_back(digits[byte & 0xf]);
    s.push_back(digits[byte >> 4]);
  }
  return s;
}

inline std::vector<std::uint64_t> hex_to_bits(const std::string& s, std::size_t nbits) {
  const std::size_t nbytes = (nbits + 7) / 8;
  if (s.size() != nbytes * 2) throw std::invalid_argument("hex field has wrong length");
  std::vector<std::uint64_t> v((nbits + 63) / 64, 0);
  if (v.empty()) v.push_back(0);
  auto val = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw std::invalid_argument("bad hex digit");
  };
  for (std::size_t b = 0; b < nbytes; ++b) {
    const std::uint8_t byte = static_cast<std::uint8_t>(val(s[2 * b]) | (val(s[2 * b + 1]) << 4));
    v[b / 8] |= static_cast<std::uint64_t>(byte) << ((b % 8) * 8);
  }
  return v;
}

}  // namespace detail

inline std::string render_instance(const RmqInstance& inst) {
  std::ostringstream os;
  os << "RMQ " << inst.q << ' ' << inst.l << ' ' << inst.w << ' ' << inst.m << ' '
     << inst.seed << '\n';
  if (inst.planted) {
    os << "planted";
    for (int p : inst.planted->positions) os << ' ' << p;
    os << '\n';
  }
  const std::size_t nlin = static_cast<std::size_t>(inst.l) * inst.w;
  const std::size_t ncross = cross_pair_count(inst.l, inst.w);
  for (const auto& p : inst.polys)
    os << int(p.c) << " | " << detail::bits_to_hex(p.lin, nlin) << " | "
       << detail::bits_to_hex(p.cross, ncross) << '\n';
  return os.str();
}

inline RmqInstance parse_instance(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty instance file");
  std::istringstream hdr(line);
  std::string magic;
  RmqInstance inst;
  if (!(hdr >> magic >> inst.q >> inst.l >> inst.w >> inst.m >> inst.seed) || magic != "RMQ")
    throw std::invalid_argument("bad header line");
  if (inst.q != 2) throw std::invalid_argument("only q = 2 instances are executable");
  if (inst.l < 2 || inst.w < 1 || inst.m < 1 || inst.l * inst.w > 64)
    throw std::invalid_argument("bad geometry in header");
  const std::size_t nlin = static_cast<std::size_t>(inst.l) * inst.w;
  const std::size_t ncross = cross_pair_count(inst.l, inst.w);
  bool first_body_line = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (first_body_line && line.rfind("planted", 0) == 0) {
      first_body_line = false;
      std::istringstream ps(line.substr(7));
      RegularVector v{inst.l, inst.w, {}};
      int j;
      while (ps >> j) v.positions.push_back(j);
      if (static_cast<int>(v.positions.size()) != inst.w)
        throw std::invalid_argument("planted line has wrong arity");
      for (int p : v.positions)
        if (p < 1 || p > inst.l) throw std::invalid_argument("planted position out of range");
      inst.planted = std::move(v);
      continue;
    }
    first_body_line = false;
    if (std::count(line.begin(), line.end(), '|') != 2)
      throw std::invalid_argument("bad polynomial line");
    std::string fields[3];
    std::size_t start = 0;
    int nf = 0;
    for (; nf < 3; ++nf) {
      const std::size_t bar = line.find('|', start);
      std::string piece = line.substr(start, bar == std::string::npos ? bar : bar - start);
      const auto b = piece.find_first_not_of(" \t");
      const auto e = piece.find_last_not_of(" \t");
      fields[nf] = b == std::string::npos ? std::string() : piece.substr(b, e - b + 1);
      if (bar == std::string::npos) {
        ++nf;
        break;
      }
      start = bar + 1;
    }
    if (nf != 3) throw std::invalid_argument("bad polynomial line");
    QuadraticPoly p;
    if (fields[0] != "0" && fields[0] != "1")
      throw std::invalid_argument("constant must be 0 or 1");
    p.c = fields[0] == "1";
    const std::string &hex1 = fields[1], &hex2 = fields[2];
    p.lin = detail::hex_to_bits(hex1, nlin);
    p.cross = detail::hex_to_bits(hex2, ncross);
    inst.polys.push_back(std::move(p));
  }
  if (static_cast<int>(inst.polys.size()) != inst.m)
    throw std::invalid_argument("polynomial count does not match header");
  if (inst.planted) {
    const Mono pv = inst.planted->to_mask();
    for (const auto& p : inst.polys)
      if (eval_poly(p, pv, inst.l, inst.w))
        throw std::invalid_argument("planted vector does not satisfy the system");
  }
  return inst;
}

}  // namespace rmq
