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

// Minimal binary container for channel tensors, bit-exact and fixed
// little-endian on every host:
//
//   magic   "MCHT" (4 bytes)
//   version u16, currently 1
//   dims    K, N, F, M as u32
//   flags   u32; bit 0 set when a validity mask follows the payload
//   meta    u32 byte length + UTF-8 JSON (carrier_freq_hz, bandwidth_hz,
//           snapshot_rate_hz, scenario_label, array_id)
//   payload K*N*F*M little-endian f64 (re, im) pairs, k-major then n, f, m
//   mask    optional, per user ceil(N/8) bytes, snapshot bits LSB-first
//
// Files are written to a temporary sibling and renamed into place.

#ifndef MCHT_TENSOR_IO_HPP
#define MCHT_TENSOR_IO_HPP

#include <string>

#include "mcht/channel_tensor.hpp"

namespace mcht
{

    constexpr std::uint16_t tensor_file_version = 1;

    void write_tensor(const ChannelTensor &tensor, const std::string &path);

    // Throws data_error with code bad_magic, version_mismatch or truncated
    // for the respective malformed inputs; dimension violations surface as
    // invariant_error from the tensor constructor.
    ChannelTensor read_tensor(const std::string &path);

} // namespace mcht

#endif
