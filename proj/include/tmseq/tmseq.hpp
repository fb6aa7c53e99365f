#pragma once

#include "tmseq/error.hpp"
#include "tmseq/words.hpp"
#include "tmseq/catalog.hpp"
#include "tmseq/gaps.hpp"
#include "tmseq/kernel.hpp"
#include "tmseq/matching.hpp"
#include "tmseq/third.hpp"
#include "tmseq/transducer.hpp"
#include "tmseq/residue.hpp"
