#ifndef QOTP_LAYOUT_HPP
#define QOTP_LAYOUT_HPP

#include <string>
#include <vector>

namespace qotp {

// Ordered map from subsystem labels to contiguous qubit blocks.
// The first label owns the most significant bits of the amplitude index
// (big-endian); every partial trace / transpose in the library relies on
// this one convention.
class SubsystemLayout {
  public:
    SubsystemLayout() = default;
    SubsystemLayout(std::initializer_list<std::pair<std::string, int>> parts);

    static SubsystemLayout single(const std::string& label, int qubits);

    void append(const std::string& label, int qubits);

    int subsystem_count() const { return int(names_.size()); }
    int total_qubits() const;
    const std::string& name(int i) const { return names_.at(i); }
    int qubits(int i) const { return sizes_.at(i); }

    bool has(const std::string& label) const;
    int index_of(const std::string& label) const;  // throws on unknown label
    int offset_of(const std::string& label) const; // first qubit of the block
    int size_of(const std::string& label) const;

    // Sub-layout of the given labels, kept in this layout's order.
    SubsystemLayout keep(const std::vector<std::string>& labels) const;
    SubsystemLayout concat(const SubsystemLayout& o) const;

    // Qubit indices covered by the labels, ascending.
    std::vector<int> qubit_positions(const std::vector<std::string>& labels) const;

    bool operator==(const SubsystemLayout& o) const {
        return names_ == o.names_ && sizes_ == o.sizes_;
    }

  private:
    std::vector<std::string> names_;
    std::vector<int> sizes_;
};

}  // namespace qotp

#endif
