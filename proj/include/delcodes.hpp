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

#include "delcodes/error.hpp"
#include "delcodes/rational.hpp"
#include "delcodes/rng.hpp"
#include "delcodes/gf.hpp"
#include "delcodes/seqkit.hpp"
#include "delcodes/innercode.hpp"
#include "delcodes/rsouter.hpp"
#include "delcodes/concat.hpp"
#include "delcodes/highnoise.hpp"
#include "delcodes/hirate.hpp"
#include "delcodes/listdec.hpp"
#include "delcodes/channel.hpp"
#include "delcodes/schemes.hpp"
#include "delcodes/reports.hpp"
