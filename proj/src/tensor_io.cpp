// SPDX-License-Identifier: Apache-2.0
//
// mcht - massive MIMO channel hardening synthesis and analysis toolkit
// Copyright (C) 2026 mcht contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mcht/tensor_io.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "mcht/errors.hpp"

namespace mcht
{

    namespace
    {
        void put_u16(std::string &out, std::uint16_t v)
        {
            out.push_back(static_cast<char>(v & 0xff));
            out.push_back(static_cast<char>((v >> 8) & 0xff));
        }

        void put_u32(std::string &out, std::uint32_t v)
        {
            for (int i = 0; i < 4; ++i)
                out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
        }

        void put_f64(std::string &out, double v)
        {
            const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
            for (int i = 0; i < 8; ++i)
                out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
        }

        class reader
        {
          public:
            reader(const unsigned char *data, std::size_t size) : m_data(data), m_size(size) {}

            std::size_t remaining() const { return m_size - m_pos; }

            const unsigned char *take(std::size_t count)
            {
                if (remaining() < count)
                    throw data_error("tensor file truncated", data_error_code::truncated);
                const unsigned char *p = m_data + m_pos;
                m_pos += count;
                return p;
            }

            std::uint16_t u16()
            {
                const unsigned char *p = take(2);
                return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
            }

            std::uint32_t u32()
            {
                const unsigned char *p = take(4);
                return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                       (static_cast<std::uint32_t>(p[2]) << 16) |
                       (static_cast<std::uint32_t>(p[3]) << 24);
            }

            double f64()
            {
                const unsigned char *p = take(8);
                std::uint64_t bits = 0;
                for (int i = 7; i >= 0; --i)
                    bits = (bits << 8) | p[i];
                return std::bit_cast<double>(bits);
            }

          private:
            const unsigned char *m_data;
            std::size_t m_size;
            std::size_t m_pos = 0;
        };

        std::string meta_json(const ChannelMeta &meta)
        {
            nlohmann::json j;
            j["carrier_freq_hz"] = meta.carrier_freq_hz;
            j["bandwidth_hz"] = meta.bandwidth_hz;
            j["snapshot_rate_hz"] = meta.snapshot_rate_hz;
            j["scenario_label"] = meta.scenario_label;
            j["array_id"] = meta.array_id;
            return j.dump();
        }

        ChannelMeta parse_meta(const std::string &text)
        {
            nlohmann::json j;
            try
            {
                j = nlohmann::json::parse(text);
            }
            catch (const nlohmann::json::parse_error &e)
            {
                throw data_error(std::string("tensor metadata is not valid JSON: ") + e.what());
            }
            ChannelMeta meta;
            meta.carrier_freq_hz = j.value("carrier_freq_hz", 0.0);
            meta.bandwidth_hz = j.value("bandwidth_hz", 0.0);
            meta.snapshot_rate_hz = j.value("snapshot_rate_hz", 0.0);
            meta.scenario_label = j.value("scenario_label", std::string());
            meta.array_id = j.value("array_id", std::string());
            return meta;
        }
    } // namespace

    void write_tensor(const ChannelTensor &tensor, const std::string &path)
    {
        if (tensor.users() > 0xffffffffull || tensor.snapshots() > 0xffffffffull ||
            tensor.freqs() > 0xffffffffull || tensor.antennas() > 0xffffffffull)
            throw invariant_error("write_tensor: dimension exceeds the u32 header range");

        std::string head;
        head.reserve(64);
        head += "MCHT";
        put_u16(head, tensor_file_version);
        put_u32(head, static_cast<std::uint32_t>(tensor.users()));
        put_u32(head, static_cast<std::uint32_t>(tensor.snapshots()));
        put_u32(head, static_cast<std::uint32_t>(tensor.freqs()));
        put_u32(head, static_cast<std::uint32_t>(tensor.antennas()));
        put_u32(head, tensor.has_validity_mask() ? 1u : 0u);

        const std::string meta = meta_json(tensor.meta());
        put_u32(head, static_cast<std::uint32_t>(meta.size()));
        head += meta;

        // Writes are single-owner; a fixed temp suffix next to the target
        // keeps the final rename on one filesystem.
        const std::filesystem::path target(path);
        std::filesystem::path tmp = target;
        tmp += ".tmp";

        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw data_error("cannot open '" + tmp.string() + "' for writing");
            out.write(head.data(), static_cast<std::streamsize>(head.size()));

            std::string block;
            block.reserve(1 << 20);
            for (const cplx &s : tensor.samples())
            {
                put_f64(block, s.real());
                put_f64(block, s.imag());
                if (block.size() >= (1 << 20))
                {
                    out.write(block.data(), static_cast<std::streamsize>(block.size()));
                    block.clear();
                }
            }

            if (tensor.has_validity_mask())
            {
                const auto mask = tensor.validity_mask();
                const std::size_t bytes_per_user = (tensor.snapshots() + 7) / 8;
                for (std::size_t k = 0; k < tensor.users(); ++k)
                {
                    std::string packed(bytes_per_user, '\0');
                    for (std::size_t n = 0; n < tensor.snapshots(); ++n)
                        if (mask[k * tensor.snapshots() + n] != 0)
                            packed[n / 8] |= static_cast<char>(1 << (n % 8));
                    block += packed;
                }
            }
            if (!block.empty())
                out.write(block.data(), static_cast<std::streamsize>(block.size()));
            if (!out)
            {
                std::error_code ec;
                std::filesystem::remove(tmp, ec);
                throw data_error("failed writing tensor to '" + tmp.string() + "'");
            }
        }

        std::error_code ec;
        std::filesystem::rename(tmp, target, ec);
        if (ec)
        {
            std::filesystem::remove(tmp, ec);
            throw data_error("cannot move tensor into place at '" + path + "'");
        }
    }

    ChannelTensor read_tensor(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw data_error("cannot open tensor file '" + path + "'");
        std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());

        reader r(bytes.data(), bytes.size());
        const unsigned char *magic = r.take(4);
        if (std::memcmp(magic, "MCHT", 4) != 0)
            throw data_error("not a channel tensor file (bad magic)",
                             data_error_code::bad_magic);
        const std::uint16_t version = r.u16();
        if (version != tensor_file_version)
            throw data_error("unsupported tensor file version " + std::to_string(version),
                             data_error_code::version_mismatch);

        const std::uint32_t users = r.u32();
        const std::uint32_t snapshots = r.u32();
        const std::uint32_t freqs = r.u32();
        const std::uint32_t antennas = r.u32();
        const std::uint32_t flags = r.u32();

        const std::uint32_t meta_len = r.u32();
        const unsigned char *meta_bytes = r.take(meta_len);
        const ChannelMeta meta =
            parse_meta(std::string(reinterpret_cast<const char *>(meta_bytes), meta_len));

        const std::size_t count = static_cast<std::size_t>(users) * snapshots * freqs * antennas;
        std::vector<cplx> samples;
        samples.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
        {
            const double re = r.f64();
            const double im = r.f64();
            samples.emplace_back(re, im);
        }

        std::vector<std::uint8_t> mask;
        if (flags & 1u)
        {
            const std::size_t bytes_per_user = (static_cast<std::size_t>(snapshots) + 7) / 8;
            mask.resize(static_cast<std::size_t>(users) * snapshots);
            for (std::size_t k = 0; k < users; ++k)
            {
                const unsigned char *packed = r.take(bytes_per_user);
                for (std::size_t n = 0; n < snapshots; ++n)
                    mask[k * snapshots + n] = (packed[n / 8] >> (n % 8)) & 1u;
            }
        }

        if (r.remaining() != 0)
            throw data_error("tensor file has " + std::to_string(r.remaining()) +
                             " trailing bytes");

        return ChannelTensor(users, snapshots, freqs, antennas, std::move(samples), meta,
                             std::move(mask));
    }

} // namespace mcht
