#pragma once

#include "dnarot/analyzer.hpp"
#include "dnarot/codebook.hpp"
#include "dnarot/dct.hpp"
#include "dnarot/entropy_stream.hpp"
#include "dnarot/error.hpp"
#include "dnarot/image.hpp"
#include "dnarot/image_codec.hpp"
#include "dnarot/nt_pack.hpp"
#include "dnarot/nucleotide.hpp"
#include "dnarot/oligo_io.hpp"
#include "dnarot/rotation.hpp"
#include "dnarot/tokens.hpp"
#include "dnarot/value_code.hpp"
