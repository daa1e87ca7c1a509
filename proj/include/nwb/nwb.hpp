#pragma once

#include "barrier.hpp"
#include "code.hpp"
#include "embed.hpp"
#include "error.hpp"
#include "ideals.hpp"
#include "io.hpp"
#include "ordinal.hpp"
#include "ramsey.hpp"
#include "sets.hpp"
