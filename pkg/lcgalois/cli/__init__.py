"""The lcgalois command line: text format, workspace, operations and reports."""
