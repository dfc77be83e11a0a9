#ifndef LCC_UTIL_HPP
#define LCC_UTIL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace lcc {

// Fixed 12-significant-digit formatting, used for every numeric field we
// serialize so that reruns are byte-identical.
std::string format_g12(double v);

// FNV-1a over raw bytes, hex-encoded. Used for artifact manifests.
std::string fnv1a_hex(const void* data, std::size_t size);
std::string hash_file(const std::string& path);
std::string hash_string(const std::string& s);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace lcc

#endif
