#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "attrcluster/dataset.hpp"

namespace attrcluster {

/// One class (distinct value) of a nominal column.
struct ClassStats {
    std::string value;
    std::size_t cardinality = 0;  // occurrences in the column
    std::size_t class_index = 0;  // 1-based, by first appearance
};

enum class Encoding { Passthrough, Cardinality, OneHotClass };

struct EncodedAttribute {
    std::string short_label;  // "Ak" or "Ak>m"
    std::string full_label;   // "Name" or "Name>ClassValue"
    std::vector<double> values;
    std::size_t origin = 0;  // 0-based source column in the CleanTable
    std::optional<ClassStats> origin_class;
    Encoding encoding = Encoding::Passthrough;
};

struct EncodedMatrix {
    std::vector<EncodedAttribute> attributes;  // column order follows source columns
    std::size_t n_rows = 0;
};

/// Base identity of a source column, used to label encoded attributes.
struct SourceName {
    std::string short_base;  // "Ak"
    std::string full_base;   // column name
    std::size_t origin = 0;
};

/// One ClassStats per distinct value, ordered by first appearance.
std::vector<ClassStats> class_cardinalities(const std::vector<std::string>& column);

/// True iff two distinct classes share a cardinality.
bool has_equicardinal_classes(const std::vector<ClassStats>& stats);

/// Replace every cell by its class cardinality. Requires no equicardinal
/// classes (DataError otherwise; ties would make distinct values collide).
EncodedAttribute encode_cardinality(const std::vector<std::string>& column,
                                    const std::vector<ClassStats>& stats, const SourceName& name);

/// One 0/1 indicator column per class, in class_index order; labels get the
/// ">m" suffix. Requires at least two classes.
std::vector<EncodedAttribute> encode_one_hot(const std::vector<std::string>& column,
                                             const std::vector<ClassStats>& stats,
                                             const SourceName& name);

/// Encode a whole table: numeric columns pass through, nominal columns use
/// cardinality encoding, except one-hot when any equicardinal pair exists.
EncodedMatrix encode_table(const CleanTable& table);

}  // namespace attrcluster
