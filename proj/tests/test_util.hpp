/**************************************************************************
 * Copyright 2026 The delcodes Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "delcodes/error.hpp"
#include "delcodes/seqkit.hpp"

#define EXPECT_ERRC(stmt, errc)                                                   \
    do {                                                                          \
        try {                                                                     \
            stmt;                                                                 \
            ADD_FAILURE() << "expected " #errc " from: " #stmt;                   \
        } catch (const ::delcodes::Error& e_) {                                   \
            EXPECT_EQ(e_.code(), ::delcodes::Errc::errc) << e_.what();            \
        }                                                                         \
    } while (0)

namespace testutil {

// All words of [k]^len in lexicographic order, as a callback.
template <class Fn>
void for_each_word(std::uint32_t k, std::size_t len, Fn&& fn) {
    std::vector<delcodes::Symbol> s(len, 0);
    while (true) {
        fn(delcodes::Word(s, k));
        std::size_t i = len;
        while (i-- > 0) {
            if (++s[i] < k) break;
            s[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) return;
    }
}

}  // namespace testutil
