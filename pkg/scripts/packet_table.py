"""Print every member of a packet with its symbol and character.

    python3 scripts/packet_table.py tests/data/sp32_param.json
"""

import argparse

from apk import packet_enumerate
from apk.io import parse_parameter
from apk.symbol import render_symbol


def main():
    ap = argparse.ArgumentParser(description="packet members with characters")
    ap.add_argument("param", help="A-parameter JSON document")
    ap.add_argument("--ascii", action="store_true")
    ap.add_argument("--strict", action="store_true")
    args = ap.parse_args()

    with open(args.param, encoding="utf-8") as fh:
        psi = parse_parameter(fh.read())
    members = packet_enumerate(psi, strict=args.strict)
    for k, m in enumerate(members, 1):
        print(f"E_{k}  eta = {m.character}")
        print(render_symbol(m.E, ascii=args.ascii))
        print()
    print(f"{len(members)} members")


if __name__ == "__main__":
    main()
