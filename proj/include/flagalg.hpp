#pragma once

#include "flagalg/char_poly.hpp"
#include "flagalg/error.hpp"
#include "flagalg/flags.hpp"
#include "flagalg/generators.hpp"
#include "flagalg/incidence.hpp"
#include "flagalg/integer.hpp"
#include "flagalg/io.hpp"
#include "flagalg/kl_index.hpp"
#include "flagalg/kl_poly.hpp"
#include "flagalg/limits.hpp"
#include "flagalg/mobius.hpp"
#include "flagalg/polynomial.hpp"
#include "flagalg/poset.hpp"
#include "flagalg/structure.hpp"
#include "flagalg/whitney.hpp"
