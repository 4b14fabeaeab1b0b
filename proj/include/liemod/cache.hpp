#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "liemod/errors.hpp"
#include "liemod/matrix.hpp"

namespace liemod {

// On-disk matrix cache. Layout (little-endian):
//   bytes 0..3   magic "LIEM"
//   byte  4      format version (1)
//   bytes 5..16  p, e, n as u32
//   bytes 17..32 rows, cols as u64
//   bytes 33..   row-major entries, one byte each (version 1 stores e = 1
//                matrices only, so every code fits a byte)
// Writes go to a temp file in the same directory followed by an atomic
// rename, so readers never observe a half-written file.

namespace cachedetail {

inline void put_u32(std::string& s, uint32_t v) {
    for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
inline void put_u64(std::string& s, uint64_t v) {
    for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
inline uint64_t get_le(const unsigned char* p, int bytes) {
    uint64_t v = 0;
    for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

}  // namespace cachedetail

struct CachedMatrix {
    uint32_t p = 0, e = 0, n = 0;
    DenseMat<uint8_t> mat;
};

inline constexpr char kCacheMagic[4] = {'L', 'I', 'E', 'M'};
inline constexpr uint8_t kCacheVersion = 1;
inline constexpr size_t kCacheHeaderSize = 33;

inline void cache_store(const std::filesystem::path& file, uint32_t p, uint32_t e, uint32_t n,
                        const DenseMat<uint8_t>& m) {
    if (e != 1) throw CacheError(CacheError::Kind::io, "cache_store: version 1 stores e = 1 only");
    std::string blob;
    blob.reserve(kCacheHeaderSize + m.rows() * m.cols());
    blob.append(kCacheMagic, 4);
    blob.push_back(static_cast<char>(kCacheVersion));
    cachedetail::put_u32(blob, p);
    cachedetail::put_u32(blob, e);
    cachedetail::put_u32(blob, n);
    cachedetail::put_u64(blob, m.rows());
    cachedetail::put_u64(blob, m.cols());
    blob.append(reinterpret_cast<const char*>(m.data().data()), m.data().size());

    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    std::random_device rd;
    const std::filesystem::path tmp =
        file.parent_path() / (file.filename().string() + ".tmp." + std::to_string(rd()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CacheError(CacheError::Kind::io, "cache_store: cannot open " + tmp.string());
        out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
        if (!out) {
            out.close();
            std::filesystem::remove(tmp, ec);
            throw CacheError(CacheError::Kind::io, "cache_store: short write to " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, file, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw CacheError(CacheError::Kind::io, "cache_store: rename failed for " + file.string());
    }
}

// Parses a cache file, validating structure but not parameters.
inline CachedMatrix cache_load_any(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw CacheError(CacheError::Kind::io, "cache_load: cannot open " + file.string());
    std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (blob.size() < kCacheHeaderSize)
        throw CacheError(CacheError::Kind::truncated, "cache_load: header truncated in " + file.string());
    if (blob.compare(0, 4, kCacheMagic, 4) != 0)
        throw CacheError(CacheError::Kind::bad_magic, "cache_load: bad magic in " + file.string());
    const auto* u = reinterpret_cast<const unsigned char*>(blob.data());
    if (u[4] != kCacheVersion)
        throw CacheError(CacheError::Kind::bad_version,
                         "cache_load: unsupported version " + std::to_string(u[4]));
    CachedMatrix out;
    out.p = static_cast<uint32_t>(cachedetail::get_le(u + 5, 4));
    out.e = static_cast<uint32_t>(cachedetail::get_le(u + 9, 4));
    out.n = static_cast<uint32_t>(cachedetail::get_le(u + 13, 4));
    const uint64_t rows = cachedetail::get_le(u + 17, 8);
    const uint64_t cols = cachedetail::get_le(u + 25, 8);
    if (blob.size() != kCacheHeaderSize + rows * cols)
        throw CacheError(CacheError::Kind::truncated, "cache_load: body truncated in " + file.string());
    out.mat = DenseMat<uint8_t>(rows, cols);
    for (uint64_t i = 0; i < rows; ++i)
        for (uint64_t j = 0; j < cols; ++j)
            out.mat.at(i, j) = static_cast<uint8_t>(blob[kCacheHeaderSize + i * cols + j]);
    return out;
}

// Parses and additionally checks the file describes the expected matrix.
inline DenseMat<uint8_t> cache_load(const std::filesystem::path& file, uint32_t p, uint32_t n,
                                    size_t rows, size_t cols) {
    CachedMatrix c = cache_load_any(file);
    if (c.p != p || c.e != 1 || c.n != n || c.mat.rows() != rows || c.mat.cols() != cols)
        throw CacheError(CacheError::Kind::mismatch,
                         "cache_load: parameter mismatch in " + file.string());
    for (uint8_t v : c.mat.data())
        if (v >= p)
            throw CacheError(CacheError::Kind::mismatch,
                             "cache_load: entry out of field range in " + file.string());
    return std::move(c.mat);
}

}  // namespace liemod
