/** The 13 patient attributes: labels, units, and categorical encodings. */

export interface SelectOption {
  value: number;
  label: string;
}

export interface FieldSpec {
  name: string;
  label: string;
  kind: "number" | "select";
  unit?: string;
  min?: number;
  step?: number;
  options?: SelectOption[];
}

export const FIELDS: FieldSpec[] = [
  { name: "age", label: "Age", kind: "number", unit: "years", min: 0, step: 1 },
  {
    name: "sex",
    label: "Sex",
    kind: "select",
    options: [
      { value: 1, label: "male (1)" },
      { value: 0, label: "female (0)" },
    ],
  },
  {
    name: "cp",
    label: "Chest pain type",
    kind: "select",
    options: [
      { value: 1, label: "typical angina (1)" },
      { value: 2, label: "atypical angina (2)" },
      { value: 3, label: "non-anginal pain (3)" },
      { value: 4, label: "asymptomatic (4)" },
    ],
  },
  { name: "trestbps", label: "Resting blood pressure", kind: "number", unit: "mmHg", min: 0, step: 1 },
  { name: "chol", label: "Serum cholesterol", kind: "number", unit: "mg/dl", min: 0, step: 1 },
  {
    name: "fbs",
    label: "Fasting blood sugar > 120 mg/dl",
    kind: "select",
    options: [
      { value: 1, label: "true (1)" },
      { value: 0, label: "false (0)" },
    ],
  },
  {
    name: "restecg",
    label: "Resting ECG result",
    kind: "select",
    options: [
      { value: 0, label: "normal (0)" },
      { value: 1, label: "ST-T wave abnormality (1)" },
      { value: 2, label: "left ventricular hypertrophy (2)" },
    ],
  },
  { name: "thalach", label: "Maximum heart rate", kind: "number", unit: "bpm", min: 0, step: 1 },
  {
    name: "exang",
    label: "Exercise induced angina",
    kind: "select",
    options: [
      { value: 1, label: "yes (1)" },
      { value: 0, label: "no (0)" },
    ],
  },
  { name: "oldpeak", label: "ST depression (exercise vs rest)", kind: "number", unit: "mm", min: 0, step: 0.1 },
  {
    name: "slope",
    label: "Slope of peak exercise ST segment",
    kind: "select",
    options: [
      { value: 1, label: "upsloping (1)" },
      { value: 2, label: "flat (2)" },
      { value: 3, label: "downsloping (3)" },
    ],
  },
  {
    name: "ca",
    label: "Major vessels colored by fluoroscopy",
    kind: "select",
    options: [
      { value: 0, label: "0" },
      { value: 1, label: "1" },
      { value: 2, label: "2" },
      { value: 3, label: "3" },
    ],
  },
  {
    name: "thal",
    label: "Thallium scan result",
    kind: "select",
    options: [
      { value: 3, label: "normal (3)" },
      { value: 6, label: "fixed defect (6)" },
      { value: 7, label: "reversible defect (7)" },
    ],
  },
];

export const FIELD_NAMES = FIELDS.map((f) => f.name);
