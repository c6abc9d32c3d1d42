#!/usr/bin/env python3
"""Regenerate include/ppso/detail/joe_kuo_table.hpp from a Joe-Kuo direction-number file.

usage: gen_sobol_header.py data/new-joe-kuo-6.8192.txt include/ppso/detail/joe_kuo_table.hpp
"""
import sys


def main(src, dst):
    rows = []
    with open(src) as f:
        next(f)  # "d s a m_i" header
        for line in f:
            parts = line.split()
            if not parts:
                continue
            d, s, a = int(parts[0]), int(parts[1]), int(parts[2])
            ms = [int(x) for x in parts[3:]]
            assert len(ms) == s, f"dimension {d}: expected {s} initial numbers"
            rows.append((s, a, ms))
    dims = len(rows) + 1
    out = []
    out.append("// Generated by tools/gen_sobol_header.py from " + src.split("/")[-1] + ". Do not edit.\n")
    out.append("#pragma once\n\n#include <cstddef>\n#include <cstdint>\n\n")
    out.append("namespace ppso::detail {\n\n")
    out.append(f"inline constexpr std::size_t kJoeKuoDimensions = {dims};\n\n")
    out.append("// Rows for dimensions 2..kJoeKuoDimensions, each laid out as s, a, m_1..m_s.\n")
    out.append("inline constexpr std::uint32_t kJoeKuoPacked[] = {\n")
    for s, a, ms in rows:
        out.append("    " + ",".join(str(v) for v in [s, a] + ms) + ",\n")
    out.append("};\n\n}  // namespace ppso::detail\n")
    with open(dst, "w") as f:
        f.writelines(out)


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
