#pragma once

#include "majoranon/device.hpp"
#include "majoranon/errors.hpp"
#include "majoranon/fields.hpp"
#include "majoranon/lattice.hpp"
#include "majoranon/observables.hpp"
#include "majoranon/presets.hpp"
#include "majoranon/relativistic.hpp"
#include "majoranon/series.hpp"
