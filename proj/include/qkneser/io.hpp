#pragma once

#include "qkneser/cover.hpp"
#include "qkneser/error.hpp"
#include "qkneser/explore.hpp"
#include "qkneser/indsets.hpp"
#include "qkneser/qcalc.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace qkneser::io {

using nlohmann::ordered_json;
using json = nlohmann::ordered_json;

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
json to_json(const qcalc::QInt& v);
qcalc::QInt qint_from_json(const json& j);

/// Basis rows as lists of integers 0..q-1.
json to_json(const pg::Subspace& s);
/// Rejects entries out of range, wrong row lengths, dependent rows and bases
/// that are not already in reduced row echelon form; failures throw `code`.
pg::Subspace subspace_from_json(const json& j, int n, const pg::Field& field, Errc code);

json to_json(const kneser::Flag& f);
kneser::Flag flag_from_json(const json& j, int n, const pg::Field& field);

json to_json(const indsets::IndSetDescriptor& desc);
/// Errors throw Error(InvalidDescriptor). The result is validated and its
/// family sorted.
indsets::IndSetDescriptor descriptor_from_json(const json& j);

json to_json(const cover::CoverCertificate& cert);
/// Errors throw Error(MalformedCertificate).
cover::CoverCertificate certificate_from_json(const json& j);

json to_json(const cover::VerifyReport& rep);
json to_json(const qcalc::SizeConstants& sc);
json to_json(const qcalc::Thresholds& t);
json to_json(const qcalc::BoundReport& rep);
json to_json(const explore::SampleStats& st);

/// Writes through a sibling temporary and renames, so readers never see a
/// partial file.
void write_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

} // namespace qkneser::io
