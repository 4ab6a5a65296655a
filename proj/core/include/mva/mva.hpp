#ifndef MVA_MVA_HPP
#define MVA_MVA_HPP

#include "mva/classifier.hpp"
#include "mva/csv.hpp"
#include "mva/errors.hpp"
#include "mva/kernels.hpp"
#include "mva/model_io.hpp"
#include "mva/npmle.hpp"
#include "mva/posterior.hpp"
#include "mva/preprocess.hpp"
#include "mva/simgen.hpp"
#include "mva/stats.hpp"

#endif
