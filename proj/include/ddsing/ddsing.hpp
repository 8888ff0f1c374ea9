#pragma once

#include "ddsing/angle_system.hpp"
#include "ddsing/certificates.hpp"
#include "ddsing/digraph.hpp"
#include "ddsing/dominance.hpp"
#include "ddsing/generators.hpp"
#include "ddsing/io.hpp"
#include "ddsing/matrix.hpp"
#include "ddsing/oracle.hpp"
#include "ddsing/verdict.hpp"
