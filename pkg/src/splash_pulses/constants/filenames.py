MANIFEST = "run.json"
"""run manifest written next to every command's outputs"""

FIELD_CSV = "field.csv"
FIELD_VTK = "field.vtk"

EXPECTED_VALUES = "expected_values.json"
"""bundled acceptance table, under the package data directory"""


def report(command: str) -> str:
    return f"{command}.json"
