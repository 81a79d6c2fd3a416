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
#include "frechet/serialize.hpp"

#include "frechet/error.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace frechet {

void ByteWriter::u32(std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        u8(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t v)
{
    for (int i = 0; i < 8; ++i)
        u8(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::bytes(std::string_view s) { buf_.append(s); }

void ByteWriter::doubles(const std::vector<double>& v)
{
    size(v.size());
    for (double x : v)
        f64(x);
}

void ByteWriter::curve(const Curve& c)
{
    size(c.dim());
    doubles(c.coords());
}

std::uint8_t ByteReader::u8()
{
    if (pos_ >= data_.size())
        throw FormatError("unexpected end of data");
    return static_cast<std::uint8_t>(data_[pos_++]);
}

std::uint32_t ByteReader::u32()
{
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
}

std::uint64_t ByteReader::u64()
{
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
}

double ByteReader::f64() { return std::bit_cast<double>(u64()); }

std::size_t ByteReader::size(std::size_t min_elem_bytes)
{
    const std::uint64_t v = u64();
    if (min_elem_bytes > 0 && v > remaining() / min_elem_bytes)
        throw FormatError("length field exceeds remaining data");
    if (v > (std::uint64_t(1) << 40))
        throw FormatError("implausible length field");
    return static_cast<std::size_t>(v);
}

std::string_view ByteReader::bytes(std::size_t n)
{
    if (n > remaining())
        throw FormatError("unexpected end of data");
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
}

std::vector<double> ByteReader::doubles()
{
    const std::size_t n = size(8);
    std::vector<double> v(n);
    for (auto& x : v)
        x = f64();
    return v;
}

Curve ByteReader::curve()
{
    const std::size_t dim = size();
    if (dim == 0)
        throw FormatError("curve with dimension 0");
    auto coords = doubles();
    try {
        return Curve(dim, std::move(coords));
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("bad curve block: ") + e.what());
    }
}

void ByteReader::expect_done() const
{
    if (!done())
        throw FormatError("trailing bytes after payload");
}

std::uint64_t fnv1a64(std::string_view data) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {
constexpr std::string_view kMagic = "FRECHIDX";
}

const std::string& IndexFile::get(SectionType type) const
{
    for (const auto& s : sections_)
        if (s.type == type)
            return s.payload;
    throw FormatError("index file has no section of type " + std::to_string(int(type)));
}

bool IndexFile::has(SectionType type) const noexcept
{
    for (const auto& s : sections_)
        if (s.type == type)
            return true;
    return false;
}

std::string IndexFile::encode() const
{
    ByteWriter w;
    w.bytes(kMagic);
    w.u32(kVersion);
    w.u32(static_cast<std::uint32_t>(sections_.size()));
    for (const auto& s : sections_) {
        w.u8(static_cast<std::uint8_t>(s.type));
        w.size(s.payload.size());
        w.u64(fnv1a64(s.payload));
        w.bytes(s.payload);
    }
    return w.take();
}

IndexFile IndexFile::decode(std::string_view data)
{
    ByteReader r(data);
    if (r.remaining() < kMagic.size() || r.bytes(kMagic.size()) != kMagic)
        throw FormatError("not an index file (bad magic)");
    const auto version = r.u32();
    if (version != kVersion)
        throw FormatError("unsupported index version " + std::to_string(version));
    const auto n = r.u32();
    IndexFile f;
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto type = r.u8();
        if (type < 1 || type > 7)
            throw FormatError("unknown section type " + std::to_string(type));
        const std::size_t len = r.size();
        const auto sum = r.u64();
        auto payload = r.bytes(len);
        if (fnv1a64(payload) != sum)
            throw FormatError("section checksum mismatch");
        f.add(static_cast<SectionType>(type), std::string(payload));
    }
    r.expect_done();
    return f;
}

void IndexFile::save(const std::string& path) const
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw FormatError("cannot write " + path);
    const std::string data = encode();
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out)
        throw FormatError("write failed for " + path);
}

IndexFile IndexFile::load(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot open " + path);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode(data);
}

} // namespace frechet
