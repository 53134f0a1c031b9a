from .cli import CommandOutcome, main, run_command, traffic_steering_project_path
from .workspace import AssessmentRecord, Workspace, WorkspaceError
