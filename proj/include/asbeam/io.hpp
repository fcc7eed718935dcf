#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "asbeam/field.hpp"
#include "asbeam/spectrum.hpp"
#include "asbeam/units.hpp"
#include "asbeam/verify.hpp"

namespace asbeam {

// CSV carries 17-significant-digit floats, '.' decimal separator, '\n' line
// ends; values parse back to bit-identical doubles. Each CSV has a JSON
// sidecar with the grid, units, and provenance metadata.

void write_text_file(const std::filesystem::path& path, const std::string& content);

// header: iy,ix,x,y,re_x,im_x,re_y,im_y,re_z,im_z
std::string field_slice_csv(const FieldSlice& slice);
nlohmann::json field_slice_sidecar(const FieldSlice& slice, const UnitSystem& units);

// header: lambda,s,iw,iy,ix,re,im ; only nonzero amplitudes are written
std::string spectrum_csv(const AngularSpectrum& spec);
nlohmann::json spectrum_sidecar(const AngularSpectrum& spec, const UnitSystem& units);

AngularSpectrum read_spectrum(const std::filesystem::path& csv_path,
                              const std::filesystem::path& sidecar_path);

nlohmann::json report_to_json(const VerificationReport& report);

}  // namespace asbeam
