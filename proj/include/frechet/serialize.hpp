/*
 * Copyright 2026 The Frechet Oracle Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *  http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
#pragma once

#include "frechet/curve.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace frechet {

/// Little-endian, fixed-width binary encoder. Doubles keep their exact bits.
class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
    void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
    void f64(double v);
    void size(std::size_t v) { u64(static_cast<std::uint64_t>(v)); }
    void bytes(std::string_view s);
    void str(std::string_view s)
    {
        size(s.size());
        bytes(s);
    }
    void doubles(const std::vector<double>& v);
    void curve(const Curve& c);

    const std::string& data() const noexcept { return buf_; }
    std::string take() { return std::move(buf_); }

private:
    std::string buf_;
};

class ByteReader {
public:
    explicit ByteReader(std::string_view data) : data_(data) {}

    std::uint8_t u8();
    std::uint32_t u32();
    std::uint64_t u64();
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
    double f64();
    /// A length or count; rejects values that cannot fit in the remaining data
    /// when each element needs at least `min_elem_bytes`.
    std::size_t size(std::size_t min_elem_bytes = 0);
    std::string_view bytes(std::size_t n);
    std::string str() { return std::string(bytes(size(1))); }
    std::vector<double> doubles();
    Curve curve();

    bool done() const noexcept { return pos_ == data_.size(); }
    std::size_t remaining() const noexcept { return data_.size() - pos_; }
    void expect_done() const;

private:
    std::string_view data_;
    std::size_t pos_ = 0;
};

std::uint64_t fnv1a64(std::string_view data) noexcept;

enum class SectionType : std::uint8_t {
    curve = 1,
    cover = 2,
    symmetric = 3,
    general = 4,
    zoom = 5,
    subcurve = 6,
    streaming = 7,
};

/**
 * Versioned container of typed sections. On disk:
 *   magic "FRECHIDX", u32 version, u32 section count, then per section
 *   u8 type, u64 length, u64 FNV-1a checksum, payload.
 */
class IndexFile {
public:
    static constexpr std::uint32_t kVersion = 1;

    struct Section {
        SectionType type;
        std::string payload;
    };

    void add(SectionType type, std::string payload) { sections_.push_back({type, std::move(payload)}); }
    const std::vector<Section>& sections() const noexcept { return sections_; }
    /// First section of the given type; throws FormatError if absent.
    const std::string& get(SectionType type) const;
    bool has(SectionType type) const noexcept;

    std::string encode() const;
    static IndexFile decode(std::string_view data);

    void save(const std::string& path) const;
    static IndexFile load(const std::string& path);

private:
    std::vector<Section> sections_;
};

} // namespace frechet
