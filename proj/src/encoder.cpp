#include "attrcluster/encoder.hpp"

#include <unordered_map>

#include "attrcluster/errors.hpp"

namespace attrcluster {

std::vector<ClassStats> class_cardinalities(const std::vector<std::string>& column) {
    std::vector<ClassStats> stats;
    std::unordered_map<std::string, std::size_t> index;  // value -> position in stats
    for (const auto& value : column) {
        auto [it, inserted] = index.try_emplace(value, stats.size());
        if (inserted)
            stats.push_back({value, 1, stats.size() + 1});
        else
            ++stats[it->second].cardinality;
    }
    return stats;
}

bool has_equicardinal_classes(const std::vector<ClassStats>& stats) {
    for (std::size_t i = 0; i < stats.size(); ++i)
        for (std::size_t j = i + 1; j < stats.size(); ++j)
            if (stats[i].cardinality == stats[j].cardinality) return true;
    return false;
}

EncodedAttribute encode_cardinality(const std::vector<std::string>& column,
                                    const std::vector<ClassStats>& stats,
                                    const SourceName& name) {
    if (has_equicardinal_classes(stats))
        throw DataError("encode_cardinality: column \"" + name.full_base +
                        "\" has equicardinal classes; use one-hot encoding");
    if (stats.size() < 2)
        throw DataError("encode_cardinality: column \"" + name.full_base + "\" is constant");

    std::unordered_map<std::string, double> code;
    for (const auto& s : stats) code[s.value] = static_cast<double>(s.cardinality);

    EncodedAttribute attr;
    attr.short_label = name.short_base;
    attr.full_label = name.full_base;
    attr.origin = name.origin;
    attr.encoding = Encoding::Cardinality;
    attr.values.reserve(column.size());
    for (const auto& cell : column) attr.values.push_back(code.at(cell));
    return attr;
}

std::vector<EncodedAttribute> encode_one_hot(const std::vector<std::string>& column,
                                             const std::vector<ClassStats>& stats,
                                             const SourceName& name) {
    if (stats.size() < 2)
        throw DataError("encode_one_hot: column \"" + name.full_base +
                        "\" has fewer than 2 classes; indicator would be constant");

    std::vector<EncodedAttribute> out;
    out.reserve(stats.size());
    for (const auto& cls : stats) {
        EncodedAttribute attr;
        attr.short_label = name.short_base + ">" + std::to_string(cls.class_index);
        attr.full_label = name.full_base + ">" + cls.value;
        attr.origin = name.origin;
        attr.origin_class = cls;
        attr.encoding = Encoding::OneHotClass;
        attr.values.reserve(column.size());
        for (const auto& cell : column) attr.values.push_back(cell == cls.value ? 1.0 : 0.0);
        out.push_back(std::move(attr));
    }
    return out;
}

EncodedMatrix encode_table(const CleanTable& table) {
    EncodedMatrix matrix;
    matrix.n_rows = table.n_rows;

    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        const auto& column = table.columns[c];
        const SourceName name{"A" + std::to_string(c + 1), column.name, c};

        if (column.kind == ColumnKind::Numeric) {
            EncodedAttribute attr;
            attr.short_label = name.short_base;
            attr.full_label = name.full_base;
            attr.origin = c;
            attr.encoding = Encoding::Passthrough;
            attr.values = column.numeric();
            matrix.attributes.push_back(std::move(attr));
            continue;
        }

        const auto stats = class_cardinalities(column.nominal());
        if (has_equicardinal_classes(stats)) {
            for (auto& attr : encode_one_hot(column.nominal(), stats, name))
                matrix.attributes.push_back(std::move(attr));
        } else {
            matrix.attributes.push_back(encode_cardinality(column.nominal(), stats, name));
        }
    }
    return matrix;
}

}  // namespace attrcluster
