#include "flora/zip.hpp"

#include <zlib.h>

#include <cstring>

#include "flora/errors.hpp"

namespace flora {

namespace {

constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEocdSig = 0x06054b50;

std::uint16_t rd16(const std::string& b, size_t off) {
    return static_cast<std::uint8_t>(b[off]) |
           (static_cast<std::uint8_t>(b[off + 1]) << 8);
}

std::uint32_t rd32(const std::string& b, size_t off) {
    return static_cast<std::uint32_t>(static_cast<std::uint8_t>(b[off])) |
           (static_cast<std::uint32_t>(static_cast<std::uint8_t>(b[off + 1])) << 8) |
           (static_cast<std::uint32_t>(static_cast<std::uint8_t>(b[off + 2])) << 16) |
           (static_cast<std::uint32_t>(static_cast<std::uint8_t>(b[off + 3])) << 24);
}

void wr16(std::string& b, std::uint16_t v) {
    b.push_back(static_cast<char>(v & 0xff));
    b.push_back(static_cast<char>((v >> 8) & 0xff));
}

void wr32(std::string& b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::string inflate_raw(const char* data, size_t compressed, size_t expected) {
    std::string out(expected, '\0');
    z_stream zs{};
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) {
        throw Error(ErrorCode::IoError, "inflate init failed");
    }
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data));
    zs.avail_in = static_cast<uInt>(compressed);
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = inflate(&zs, Z_FINISH);
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || zs.total_out != expected) {
        throw Error(ErrorCode::IoError, "corrupt deflate stream in archive");
    }
    return out;
}

}  // namespace

ZipArchive::ZipArchive(std::string bytes) : bytes_(std::move(bytes)) {
    if (bytes_.size() < 22) throw Error(ErrorCode::IoError, "not a zip archive");

    // EOCD is at the end, possibly preceded by a comment.
    size_t eocd = std::string::npos;
    size_t scan_limit = bytes_.size() >= 22 + 65535 ? bytes_.size() - 22 - 65535 : 0;
    for (size_t pos = bytes_.size() - 22; ; --pos) {
        if (rd32(bytes_, pos) == kEocdSig) {
            eocd = pos;
            break;
        }
        if (pos == scan_limit) break;
    }
    if (eocd == std::string::npos) throw Error(ErrorCode::IoError, "zip end record not found");

    const std::uint16_t count = rd16(bytes_, eocd + 10);
    std::uint32_t offset = rd32(bytes_, eocd + 16);
    for (std::uint16_t i = 0; i < count; ++i) {
        if (offset + 46 > bytes_.size() || rd32(bytes_, offset) != kCentralSig) {
            throw Error(ErrorCode::IoError, "corrupt zip central directory");
        }
        Entry entry;
        entry.method = rd16(bytes_, offset + 10);
        entry.compressed_size = rd32(bytes_, offset + 20);
        entry.uncompressed_size = rd32(bytes_, offset + 24);
        const std::uint16_t name_len = rd16(bytes_, offset + 28);
        const std::uint16_t extra_len = rd16(bytes_, offset + 30);
        const std::uint16_t comment_len = rd16(bytes_, offset + 32);
        entry.local_offset = rd32(bytes_, offset + 42);
        std::string name = bytes_.substr(offset + 46, name_len);
        entries_[name] = entry;
        offset += 46 + name_len + extra_len + comment_len;
    }
}

bool ZipArchive::has_entry(const std::string& name) const {
    return entries_.count(name) != 0;
}

std::vector<std::string> ZipArchive::entry_names() const {
    std::vector<std::string> names;
    names.reserve(entries_.size());
    for (const auto& [name, entry] : entries_) names.push_back(name);
    return names;
}

std::string ZipArchive::read_entry(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw Error(ErrorCode::IoError, "zip entry not found: " + name);
    const Entry& entry = it->second;

    size_t off = entry.local_offset;
    if (off + 30 > bytes_.size() || rd32(bytes_, off) != kLocalSig) {
        throw Error(ErrorCode::IoError, "corrupt zip local header");
    }
    const std::uint16_t name_len = rd16(bytes_, off + 26);
    const std::uint16_t extra_len = rd16(bytes_, off + 28);
    size_t data_off = off + 30 + name_len + extra_len;
    if (data_off + entry.compressed_size > bytes_.size()) {
        throw Error(ErrorCode::IoError, "zip entry data truncated");
    }

    if (entry.method == 0) {
        return bytes_.substr(data_off, entry.compressed_size);
    }
    if (entry.method == 8) {
        return inflate_raw(bytes_.data() + data_off, entry.compressed_size,
                           entry.uncompressed_size);
    }
    throw Error(ErrorCode::IoError, "unsupported zip compression method");
}

void ZipWriter::add_entry(const std::string& name, std::string_view content) {
    Pending pending;
    pending.name = name;
    pending.content.assign(content);
    pending.crc = static_cast<std::uint32_t>(
        crc32(0, reinterpret_cast<const Bytef*>(content.data()), static_cast<uInt>(content.size())));
    pending.offset = static_cast<std::uint32_t>(data_.size());

    wr32(data_, kLocalSig);
    wr16(data_, 20);  // version needed
    wr16(data_, 0);   // flags
    wr16(data_, 0);   // stored
    wr16(data_, 0);   // mod time
    wr16(data_, 0);   // mod date
    wr32(data_, pending.crc);
    wr32(data_, static_cast<std::uint32_t>(content.size()));
    wr32(data_, static_cast<std::uint32_t>(content.size()));
    wr16(data_, static_cast<std::uint16_t>(name.size()));
    wr16(data_, 0);  // extra len
    data_ += name;
    data_.append(content);

    entries_.push_back(std::move(pending));
}

std::string ZipWriter::finish() const {
    std::string out = data_;
    const std::uint32_t central_start = static_cast<std::uint32_t>(out.size());
    for (const auto& entry : entries_) {
        wr32(out, kCentralSig);
        wr16(out, 20);  // version made by
        wr16(out, 20);  // version needed
        wr16(out, 0);   // flags
        wr16(out, 0);   // stored
        wr16(out, 0);   // time
        wr16(out, 0);   // date
        wr32(out, entry.crc);
        wr32(out, static_cast<std::uint32_t>(entry.content.size()));
        wr32(out, static_cast<std::uint32_t>(entry.content.size()));
        wr16(out, static_cast<std::uint16_t>(entry.name.size()));
        wr16(out, 0);  // extra
        wr16(out, 0);  // comment
        wr16(out, 0);  // disk
        wr16(out, 0);  // internal attrs
        wr32(out, 0);  // external attrs
        wr32(out, entry.offset);
        out += entry.name;
    }
    const std::uint32_t central_size = static_cast<std::uint32_t>(out.size()) - central_start;
    wr32(out, kEocdSig);
    wr16(out, 0);  // disk
    wr16(out, 0);  // central dir disk
    wr16(out, static_cast<std::uint16_t>(entries_.size()));
    wr16(out, static_cast<std::uint16_t>(entries_.size()));
    wr32(out, central_size);
    wr32(out, central_start);
    wr16(out, 0);  // comment len
    return out;
}

}  // namespace flora
