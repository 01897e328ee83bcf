#include "qotp/layout.hpp"

#include <stdexcept>

namespace qotp {

SubsystemLayout::SubsystemLayout(std::initializer_list<std::pair<std::string, int>> parts) {
    for (const auto& [label, q] : parts) append(label, q);
}

SubsystemLayout SubsystemLayout::single(const std::string& label, int qubits) {
    SubsystemLayout l;
    l.append(label, qubits);
    return l;
}

void SubsystemLayout::append(const std::string& label, int qubits) {
    if (qubits < 0) throw std::invalid_argument("SubsystemLayout: negative qubit count");
    if (has(label)) throw std::invalid_argument("SubsystemLayout: duplicate label '" + label + "'");
    names_.push_back(label);
    sizes_.push_back(qubits);
}

int SubsystemLayout::total_qubits() const {
    int t = 0;
    for (int s : sizes_) t += s;
    return t;
}

bool SubsystemLayout::has(const std::string& label) const {
    for (const auto& n : names_)
        if (n == label) return true;
    return false;
}

int SubsystemLayout::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == label) return int(i);
    throw std::invalid_argument("SubsystemLayout: unknown label '" + label + "'");
}

int SubsystemLayout::offset_of(const std::string& label) const {
    int idx = index_of(label);
    int off = 0;
    for (int i = 0; i < idx; ++i) off += sizes_[i];
    return off;
}

int SubsystemLayout::size_of(const std::string& label) const {
    return sizes_[index_of(label)];
}

SubsystemLayout SubsystemLayout::keep(const std::vector<std::string>& labels) const {
    for (const auto& l : labels) index_of(l);  // validate
    SubsystemLayout out;
    for (std::size_t i = 0; i < names_.size(); ++i) {
        for (const auto& l : labels) {
            if (names_[i] == l) {
                out.append(names_[i], sizes_[i]);
                break;
            }
        }
    }
    return out;
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& o) const {
    SubsystemLayout out = *this;
    for (int i = 0; i < o.subsystem_count(); ++i) out.append(o.name(i), o.qubits(i));
    return out;
}

std::vector<int> SubsystemLayout::qubit_positions(const std::vector<std::string>& labels) const {
    for (const auto& l : labels) index_of(l);  // validate
    std::vector<int> out;
    int off = 0;
    for (std::size_t i = 0; i < names_.size(); ++i) {
        bool wanted = false;
        for (const auto& l : labels) {
            if (names_[i] == l) wanted = true;
        }
        if (wanted) {
            for (int q = 0; q < sizes_[i]; ++q) out.push_back(off + q);
        }
        off += sizes_[i];
    }
    return out;
}

}  // namespace qotp
