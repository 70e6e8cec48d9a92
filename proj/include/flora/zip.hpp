#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace flora {

// Minimal ZIP container support: stored and deflate entries, no encryption,
// no zip64. Enough for Darwin Core archives.

class ZipArchive {
public:
    explicit ZipArchive(std::string bytes);

    bool has_entry(const std::string& name) const;
    std::vector<std::string> entry_names() const;
    std::string read_entry(const std::string& name) const;

private:
    struct Entry {
        std::uint16_t method;
        std::uint32_t compressed_size;
        std::uint32_t uncompressed_size;
        std::uint32_t local_offset;
    };

    std::string bytes_;
    std::map<std::string, Entry> entries_;
};

class ZipWriter {
public:
    void add_entry(const std::string& name, std::string_view content);
    std::string finish() const;

private:
    struct Pending {
        std::string name;
        std::string content;
        std::uint32_t crc;
        std::uint32_t offset;
    };
    std::string data_;
    std::vector<Pending> entries_;
};

}  // namespace flora
