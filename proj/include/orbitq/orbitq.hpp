#pragma once

#include "orbitq/errors.hpp"
#include "orbitq/factorizations.hpp"
#include "orbitq/field.hpp"
#include "orbitq/group.hpp"
#include "orbitq/io.hpp"
#include "orbitq/linalg.hpp"
#include "orbitq/matrix.hpp"
#include "orbitq/oracle.hpp"
#include "orbitq/point.hpp"
#include "orbitq/quotient.hpp"
#include "orbitq/random.hpp"
