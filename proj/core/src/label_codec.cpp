#include <cstdint>
#include <string>
#include <string_view>

#include "uhtp/error.hpp"
#include "uhtp/reversible.hpp"

namespace uhtp {

namespace {

constexpr char kVersion = 0x01;
enum Tag : unsigned char {
  kState = 0x10,
  kHead = 0x11,
  kTape = 0x12,
  kHistory = 0x13,
  kClock = 0x20,
  kHalt = 0x21,
  kBeacon = 0x22,
};

void put_u32(std::string& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((v >> shift) & 0xFF));
  }
}

void put_i64(std::string& out, std::int64_t v) {
  const auto u = static_cast<std::uint64_t>(v);
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((u >> shift) & 0xFF));
  }
}

void put_field(std::string& out, Tag tag, const std::string& value) {
  out.push_back(static_cast<char>(tag));
  put_u32(out, static_cast<std::uint32_t>(value.size()));
  out += value;
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  bool done() const { return pos_ == bytes_.size(); }

  unsigned char u8() {
    need(1);
    return static_cast<unsigned char>(bytes_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | static_cast<unsigned char>(bytes_[pos_++]);
    return v;
  }
  std::int64_t i64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | static_cast<unsigned char>(bytes_[pos_++]);
    return static_cast<std::int64_t>(v);
  }
  std::string_view take(std::size_t n) {
    need(n);
    const auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw RangeError("truncated label encoding");
  }
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize(const ExtendedBasisState& s) {
  std::string out;
  out.reserve(64 + 12 * s.work.tape.size() + 4 * s.work.history.size());
  out.push_back(kVersion);

  std::string v;
  put_u32(v, s.work.state);
  put_field(out, kState, v);

  v.clear();
  put_i64(v, s.work.head);
  put_field(out, kHead, v);

  v.clear();
  for (const auto& [cell, sym] : s.work.tape) {
    put_i64(v, cell);
    put_u32(v, sym);
  }
  put_field(out, kTape, v);

  v.clear();
  for (const RuleId r : s.work.history) put_u32(v, r);
  put_field(out, kHistory, v);

  v.clear();
  put_i64(v, s.clock);
  put_field(out, kClock, v);

  put_field(out, kHalt, std::string(1, s.halted ? '\x01' : '\x00'));
  put_field(out, kBeacon, std::string(1, s.beacon ? '\x01' : '\x00'));
  return out;
}

ExtendedBasisState deserialize(std::string_view bytes) {
  Reader in(bytes);
  if (in.u8() != kVersion) throw RangeError("unknown label encoding version");

  const auto expect = [&](Tag tag) {
    if (in.u8() != tag) throw RangeError("unexpected field in label encoding");
    return in.u32();
  };
  const auto fixed = [&](Tag tag, std::uint32_t size) {
    if (expect(tag) != size) throw RangeError("bad field length in label encoding");
  };

  ExtendedBasisState s;
  fixed(kState, 4);
  s.work.state = in.u32();
  fixed(kHead, 8);
  s.work.head = in.i64();

  const auto tape_len = expect(kTape);
  if (tape_len % 12 != 0) throw RangeError("bad tape length in label encoding");
  bool first = true;
  std::int64_t last = 0;
  for (std::uint32_t i = 0; i < tape_len / 12; ++i) {
    const auto cell = in.i64();
    const auto sym = in.u32();
    if ((!first && cell <= last) || sym == MachineSpec::blank()) {
      throw RangeError("non-canonical tape in label encoding");
    }
    s.work.tape.emplace(cell, sym);
    first = false;
    last = cell;
  }

  const auto hist_len = expect(kHistory);
  if (hist_len % 4 != 0) throw RangeError("bad history length in label encoding");
  s.work.history.reserve(hist_len / 4);
  for (std::uint32_t i = 0; i < hist_len / 4; ++i) s.work.history.push_back(in.u32());

  fixed(kClock, 8);
  s.clock = in.i64();
  fixed(kHalt, 1);
  const auto h = in.u8();
  fixed(kBeacon, 1);
  const auto b = in.u8();
  if (h > 1 || b > 1) throw RangeError("non-canonical flag in label encoding");
  s.halted = h == 1;
  s.beacon = b == 1;
  if (!in.done()) throw RangeError("trailing bytes in label encoding");
  return s;
}

std::string to_hex(std::string_view bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (const char c : bytes) {
    const auto u = static_cast<unsigned char>(c);
    out.push_back(digits[u >> 4]);
    out.push_back(digits[u & 0xF]);
  }
  return out;
}

std::string from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw RangeError("odd-length hex string");
  const auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw RangeError("invalid hex digit");
  };
  std::string out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    out.push_back(static_cast<char>(nibble(hex[i]) << 4 | nibble(hex[i + 1])));
  }
  return out;
}

}  // namespace uhtp
