#pragma once

#include <filesystem>
#include <iosfwd>

#include "topomagic/mps.hpp"

namespace topomagic {

// Binary checkpoint container; layout in docs/formats.md.
void write_mps(std::ostream& out, const Mps& psi);
Mps read_mps(std::istream& in);

void save_mps(const std::filesystem::path& path, const Mps& psi);
Mps load_mps(const std::filesystem::path& path);

}  // namespace topomagic
