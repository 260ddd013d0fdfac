#pragma once

#include "hyplat/autgrp.hpp"
#include "hyplat/cone.hpp"
#include "hyplat/diagonalize.hpp"
#include "hyplat/hnf.hpp"
#include "hyplat/io.hpp"
#include "hyplat/lll.hpp"
#include "hyplat/matrix.hpp"
#include "hyplat/numeric.hpp"
#include "hyplat/orbit.hpp"
#include "hyplat/pdlat.hpp"
#include "hyplat/pipeline.hpp"
#include "hyplat/polycone.hpp"
#include "hyplat/voronoi.hpp"
#include "hyplat/watson.hpp"
