/** Shapes of the engine's HTTP API documents (see backend docs/api.md). */

export type Role = "admin" | "user";

export type FieldType = "integer" | "string" | "date";

export interface FormFieldSpec {
  name: string;
  displayName: string;
  fieldType: FieldType;
  readOnly: boolean;
  value?: unknown;
}

export interface FormSpec {
  fields: FormFieldSpec[];
  choices: string[];
}

export interface TaskContext {
  instanceName: string;
  modelName: string;
  subjectLabel: string;
  stateLabel: string;
}

export interface Task {
  requestId: number;
  instanceId: string;
  formSpec: FormSpec;
  context: TaskContext;
}

export interface ModelRecord {
  modelId: string;
  name: string;
  sourceKind: string;
  subjects: string[];
  uploadedAt: string;
  warnings: { componentId: string; rule: string; message: string }[];
}

export interface SubjectStatus {
  subject: string;
  currentStateLabel: string;
  alive: boolean;
}

export interface InstanceStatus {
  instanceId: string;
  name: string;
  modelName: string;
  completed: boolean;
  subjects: SubjectStatus[];
}

export interface ApiError {
  error: string;
  detail: string;
  findings?: { severity: string; componentId: string; rule: string; message: string }[];
}
