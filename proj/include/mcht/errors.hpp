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

#ifndef MCHT_ERRORS_HPP
#define MCHT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mcht
{

    // Process exit codes used by the CLI. Library exceptions map onto these.
    enum class exit_code : int
    {
        ok = 0,
        usage = 2,
        data = 3,
        invariant = 4
    };

    // Bad command lines, unknown figure ids, missing required flags.
    class usage_error : public std::runtime_error
    {
    public:
        explicit usage_error(const std::string &msg) : std::runtime_error(msg) {}
    };

    // Fine-grained codes for data errors so callers (and tests) can tell
    // a bad magic from a truncated payload without parsing messages.
    enum class data_error_code : int
    {
        generic = 0,
        bad_magic = 1,
        version_mismatch = 2,
        truncated = 3,
        zero_energy = 4,
        malformed_config = 5
    };

    // Unreadable or inconsistent input data (files, tensors, configs).
    class data_error : public std::runtime_error
    {
    public:
        explicit data_error(const std::string &msg, data_error_code code = data_error_code::generic)
            : std::runtime_error(msg), m_code(code) {}
        data_error_code code() const noexcept { return m_code; }

    private:
        data_error_code m_code;
    };

    // A domain-type invariant was violated (empty dims, NaN samples, duplicate
    // subset indices, inconsistent prefix structure, ...).
    class invariant_error : public std::runtime_error
    {
    public:
        explicit invariant_error(const std::string &msg) : std::runtime_error(msg) {}
    };

} // namespace mcht

#endif
