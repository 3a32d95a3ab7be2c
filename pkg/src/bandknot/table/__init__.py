from .records import KnotRecord, KnotTable, TableInconsistent, load_table, verify_table
from .identify import IdentificationResult, Identifier, identify
