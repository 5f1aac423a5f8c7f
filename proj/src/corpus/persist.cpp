#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "dorm/corpus.hpp"

namespace dorm {

namespace {

constexpr std::array<char, 4> kMagic{'D', 'O', 'R', 'M'};
constexpr std::size_t kPreamble = kMagic.size() + 1;
constexpr std::size_t kTrailer = 4;

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    buf_.append(s);
  }
  void raw(const char* data, std::size_t n) { buf_.append(data, n); }
  std::string& buffer() { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  Reader(const char* data, std::size_t size) : data_(data), size_(size) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{static_cast<std::uint8_t>(data_[pos_++])} << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{static_cast<std::uint8_t>(data_[pos_++])} << (8 * i);
    return v;
  }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  std::string str() {
    auto n = u32();
    need(n);
    std::string s(data_ + pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == size_; }
  // Guards element counts read from the file before allocating.
  void need(std::uint64_t n) const {
    if (n > size_ - pos_) throw Error(Errc::CorruptFile, "index payload truncated");
  }

 private:
  const char* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

std::uint32_t checksum(const char* data, std::size_t n) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks for very large payloads.
  while (n > 0) {
    auto chunk = static_cast<uInt>(std::min<std::size_t>(n, 1u << 30));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(data), chunk);
    data += chunk;
    n -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

void save_index(const CorpusIndex& index, std::ostream& out) {
  Writer w;
  w.raw(kMagic.data(), kMagic.size());
  w.u8(kIndexFormatVersion);
  w.i32(index.range_.start());
  w.i32(index.range_.end());
  w.u64(index.ids_.size());
  w.u64(index.out_targets_.size());
  for (std::size_t p = 0; p < index.ids_.size(); ++p) {
    w.str(index.ids_[p]);
    w.i32(index.years_[p]);
    w.u8(static_cast<std::uint8_t>(index.doc_types_[p]));
    w.i32(index.fields_[p]);
  }
  for (auto v : index.out_offsets_) w.u64(v);
  for (auto v : index.out_targets_) w.u32(v);
  for (auto v : index.in_offsets_) w.u64(v);
  for (auto v : index.in_sources_) w.u32(v);
  w.u32(checksum(w.buffer().data(), w.buffer().size()));
  out.write(w.buffer().data(), static_cast<std::streamsize>(w.buffer().size()));
  if (!out) throw Error(Errc::Io, "failed writing index");
}

void save_index(const CorpusIndex& index, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot open " + path.string() + " for writing");
  save_index(index, out);
}

CorpusIndex load_index(std::istream& in) {
  std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (bytes.size() < kPreamble + kTrailer ||
      std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) {
    throw Error(Errc::CorruptFile, "missing DORM magic");
  }
  const auto version = static_cast<std::uint8_t>(bytes[kMagic.size()]);
  if (version != kIndexFormatVersion) {
    throw Error(Errc::VersionMismatch, "index version " + std::to_string(version) + ", expected " +
                                           std::to_string(kIndexFormatVersion));
  }
  const std::size_t body = bytes.size() - kTrailer;
  Reader trailer(bytes.data() + body, kTrailer);
  if (trailer.u32() != checksum(bytes.data(), body)) throw Error(Errc::CorruptFile, "checksum mismatch");

  Reader r(bytes.data() + kPreamble, body - kPreamble);
  CorpusIndex index;
  const int y0 = r.i32();
  const int y1 = r.i32();
  if (y0 > y1) throw Error(Errc::CorruptFile, "invalid year range");
  index.range_ = YearWindow(y0, y1);
  const auto n = r.u64();
  const auto m = r.u64();
  if (n > body || m > body) throw Error(Errc::CorruptFile, "implausible element counts");
  r.need(n * 13);
  index.ids_.reserve(n);
  for (std::uint64_t p = 0; p < n; ++p) {
    index.ids_.push_back(r.str());
    index.years_.push_back(r.i32());
    auto type = r.u8();
    if (type > static_cast<std::uint8_t>(DocType::Other)) throw Error(Errc::CorruptFile, "bad doc type");
    index.doc_types_.push_back(static_cast<DocType>(type));
    index.fields_.push_back(r.i32());
  }
  auto read_offsets = [&](std::vector<std::uint64_t>& offsets) {
    r.need((n + 1) * 8);
    offsets.resize(n + 1);
    for (auto& v : offsets) v = r.u64();
    if (offsets.front() != 0 || offsets.back() != m) throw Error(Errc::CorruptFile, "bad offsets");
    for (std::size_t i = 1; i < offsets.size(); ++i) {
      if (offsets[i] < offsets[i - 1]) throw Error(Errc::CorruptFile, "bad offsets");
    }
  };
  auto read_targets = [&](std::vector<PaperIdx>& targets) {
    r.need(m * 4);
    targets.resize(m);
    for (auto& v : targets) {
      v = r.u32();
      if (v >= n) throw Error(Errc::CorruptFile, "edge endpoint out of range");
    }
  };
  read_offsets(index.out_offsets_);
  read_targets(index.out_targets_);
  read_offsets(index.in_offsets_);
  read_targets(index.in_sources_);
  if (!r.done()) throw Error(Errc::CorruptFile, "trailing bytes in payload");
  return index;
}

CorpusIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open index " + path.string());
  return load_index(in);
}

}  // namespace dorm
