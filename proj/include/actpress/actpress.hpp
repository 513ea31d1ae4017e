// Copyright 2026 The actpress Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "actpress/accounting.hpp"
#include "actpress/bitstream.hpp"
#include "actpress/container.hpp"
#include "actpress/error.hpp"
#include "actpress/gaussian.hpp"
#include "actpress/golomb.hpp"
#include "actpress/kernels.hpp"
#include "actpress/pipeline.hpp"
#include "actpress/quantize.hpp"
#include "actpress/rans.hpp"
#include "actpress/tensor.hpp"
#include "actpress/transform.hpp"
