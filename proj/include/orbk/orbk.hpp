#pragma once

// Umbrella header for the orbk library.

#include "orbk/bredon.hpp"
#include "orbk/chartable.hpp"
#include "orbk/cli.hpp"
#include "orbk/cocycle.hpp"
#include "orbk/complex.hpp"
#include "orbk/cyclotomic.hpp"
#include "orbk/extension.hpp"
#include "orbk/group.hpp"
#include "orbk/h2.hpp"
#include "orbk/io.hpp"
#include "orbk/matrix.hpp"
#include "orbk/numeric.hpp"
#include "orbk/sector_series.hpp"
#include "orbk/sectors.hpp"
#include "orbk/trring.hpp"
#include "orbk/verify.hpp"
#include "orbk/zmod.hpp"
