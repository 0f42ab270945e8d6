#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "polybound/bounds.hpp"
#include "polybound/catalog.hpp"
#include "polybound/scan.hpp"
#include "polybound/structure.hpp"

namespace polybound {

/// Insertion-ordered so that serialized field order follows the type layout.
using Json = nlohmann::ordered_json;

Json to_json(const BoundResult& bound);
Json to_json(const VerificationReport& report);
Json to_json(const FitResult& fit);
Json to_json(const ScanPoint& point);
Json to_json(std::span<const ScanPoint> points);

/// Inverse of to_json(BoundResult). Throws DomainError on malformed input.
BoundResult bound_from_json(const Json& j);

/// Compact serialization with every floating value printed as %.17g and
/// non-finite values as null, so identical inputs give identical bytes.
std::string dump_json(const Json& j);

}  // namespace polybound
