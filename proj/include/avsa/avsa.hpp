#pragma once

// Umbrella header for the avsa toolkit.

#include "avsa/alignment.hpp"
#include "avsa/avsf_io.hpp"
#include "avsa/corpus.hpp"
#include "avsa/direction.hpp"
#include "avsa/foa.hpp"
#include "avsa/geometry.hpp"
#include "avsa/image.hpp"
#include "avsa/intensity.hpp"
#include "avsa/json_io.hpp"
#include "avsa/mel.hpp"
#include "avsa/png_io.hpp"
#include "avsa/rng.hpp"
#include "avsa/rotation.hpp"
#include "avsa/scene.hpp"
#include "avsa/stereo_features.hpp"
#include "avsa/stft.hpp"
#include "avsa/toy_trainer.hpp"
#include "avsa/validity.hpp"
#include "avsa/version.hpp"
#include "avsa/wav_io.hpp"
