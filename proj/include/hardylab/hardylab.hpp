// Copyright 2026 The hardylab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HARDYLAB_HARDYLAB_HPP
#define HARDYLAB_HARDYLAB_HPP

#include "hardylab/constants.hpp"
#include "hardylab/domain.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/measure.hpp"
#include "hardylab/radial.hpp"
#include "hardylab/report.hpp"
#include "hardylab/special.hpp"
#include "hardylab/symmetrize.hpp"
#include "hardylab/varmin.hpp"

#endif  // HARDYLAB_HARDYLAB_HPP
