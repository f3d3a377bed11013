#pragma once

#include <string>

#include "isat/chip.hpp"
#include "isat/formulations.hpp"
#include "isat/ising.hpp"

namespace isat {

// Model schema: {"n": int, "h": [float], "J": [[i,j,w]], "offset": float,
// "roles": [...]} plus, for encoded instances, the formulation id and the
// source CNF so that decoding works across process boundaries. Quantized
// models add "clamp_count" and "removed".

std::string ising_to_json(const IsingModel& model, int indent = -1);
IsingModel ising_from_json(const std::string& text);

std::string formulation_to_json(const FormulationModel& model,
                                int indent = -1);
FormulationModel formulation_from_json(const std::string& text);

std::string quantized_to_json(const QuantizedModel& qm, int indent = -1);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace isat
