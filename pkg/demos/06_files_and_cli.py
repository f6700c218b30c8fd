"""
File formats and the command line
=================================

Every object has a JSON form tagged with its schema.  The ``morita`` command
reads these files; here it is driven in-process through ``main``.
"""

import os
import tempfile

from morita.catalog import mobius_action
from morita.cli import main
from morita.groupoid import pair_groupoid, point_groupoid
from morita.io import action_to_json, groupoid_to_json, write_json

tmp = tempfile.mkdtemp()
write_json(groupoid_to_json(pair_groupoid(range(3))), os.path.join(tmp, "pair3.json"))
write_json(groupoid_to_json(point_groupoid()), os.path.join(tmp, "point.json"))
write_json(action_to_json(mobius_action()), os.path.join(tmp, "mobius.json"))

for argv in (["validate", "pair3.json"],
             ["morita", "pair3.json", "point.json", "--out", "witness.json"],
             ["validate", "witness.json"],
             ["check-seq", "example4", "--action", "mobius.json"],
             ["catalog", "run", "mobius"]):
    argv = [os.path.join(tmp, a) if a.endswith(".json") else a for a in argv]
    print("$ morita", " ".join(os.path.basename(a) for a in argv))
    code = main(argv)
    print("exit code", code, "\n")
