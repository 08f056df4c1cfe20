#pragma once

#include "tvbetti/error.hpp"
#include "tvbetti/exactlin.hpp"
#include "tvbetti/cone.hpp"
#include "tvbetti/polyhedron.hpp"
#include "tvbetti/polynomial.hpp"
#include "tvbetti/face_poset.hpp"
#include "tvbetti/fan.hpp"
#include "tvbetti/hpoly.hpp"
#include "tvbetti/divisorial.hpp"
#include "tvbetti/betti.hpp"
#include "tvbetti/io.hpp"
