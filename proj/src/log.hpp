// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The swipt-ofdm Authors
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

#pragma once

// Library logging. Verbosity comes from the SWIPT_LOG environment variable
// (error, info or debug); the default is error.

#include <spdlog/spdlog.h>

#include <utility>

namespace swipt::log {

void init_from_env();

template <typename... Args>
void debug(const char* pattern, Args&&... args) {
  init_from_env();
  spdlog::debug(fmt::runtime(pattern), std::forward<Args>(args)...);
}

template <typename... Args>
void info(const char* pattern, Args&&... args) {
  init_from_env();
  spdlog::info(fmt::runtime(pattern), std::forward<Args>(args)...);
}

}  // namespace swipt::log
